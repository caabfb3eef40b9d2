// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pag/balanced.hpp"
#include "pag/model.hpp"

// Instance growth that preserves balanced equilibria, plus random instance
// generation for oracle tests. Two growth moves keep a bundle balanced by
// construction:
//   - raise_pair_power: add delta to both endpoint powers of an adversary
//     pair and to their mutual allocations;
//   - attach_zero_power_adversary: add a fresh zero-power country hostile to
//     an existing one, bordering the equilibrium with zeros.

namespace pag {

struct LineageStep {
  enum class Op : std::uint8_t { seed, raise_pair, attach_node };
  Op op = Op::seed;
  double power = 0.0;  // seed: initial power of the equal adversary pair
  int i = -1;          // raise_pair endpoint / attach target
  int j = -1;          // raise_pair endpoint
  double delta = 0.0;  // raise_pair increment

  friend bool operator==(const LineageStep&, const LineageStep&) = default;
};

/// A game together with a balanced equilibrium known to hold for it, and the
/// construction steps that produced the pair.
struct SeedBundle {
  EnvironmentGraph graph;
  AllocationMatrix equilibrium;
  std::vector<LineageStep> lineage;
};

/// Wraps an externally built (graph, equilibrium) pair, verifying the bundle
/// invariant. Lineage starts empty.
inline SeedBundle make_bundle(EnvironmentGraph graph,
                              AllocationMatrix equilibrium, double eps = kEps) {
  const auto report = is_balanced(graph, equilibrium, eps);
  if (!report.balanced()) {
    throw std::invalid_argument("bundle is not balanced: " + report.detail);
  }
  return {std::move(graph), std::move(equilibrium), {}};
}

/// Smallest nonempty seed: two countries of equal power locked in mutual
/// adversity, each spending everything on the other.
inline SeedBundle seed_bundle(double pair_power) {
  if (!(pair_power >= 0.0)) {
    throw std::invalid_argument("seed power must be nonnegative");
  }
  EnvironmentGraph g({pair_power, pair_power}, {}, {{0, 1}});
  AllocationMatrix u(2);
  u.set(0, 1, pair_power);
  u.set(1, 0, pair_power);
  SeedBundle b{std::move(g), std::move(u), {}};
  b.lineage.push_back({LineageStep::Op::seed, pair_power, -1, -1, 0.0});
  return b;
}

namespace detail {

/// Re-verifies the balance conditions at one country. Growth moves touch at
/// most two rows of a bundle that is balanced by induction, so checking the
/// touched rows re-establishes the full invariant without an O(n) pass.
inline void verify_balanced_row(const SeedBundle& b, int i, double eps) {
  const auto& g = b.graph;
  const auto& u = b.equilibrium;
  if (!g.has_adversaries(i)) {
    if (std::abs(u.at(i, i) - g.power(i)) > eps) {
      throw std::logic_error("growth move broke self-allocation at country " +
                             std::to_string(i));
    }
    return;
  }
  double spent = 0.0;
  for (int a : g.adversaries(i)) {
    const double out = u.at(i, a);
    spent += out;
    if (std::abs(out - u.at(a, i)) > eps) {
      throw std::logic_error("growth move broke symmetry at pair (" +
                             std::to_string(i) + "," + std::to_string(a) + ")");
    }
  }
  if (std::abs(u.at(i, i)) > eps || std::abs(spent - g.power(i)) > eps) {
    throw std::logic_error("growth move broke the spend-all condition at country " +
                           std::to_string(i));
  }
}

}  // namespace detail

/// Raises the powers of adversary pair (i,j) by delta and their mutual
/// allocations with them; the result is balanced again. Throws when (i,j) is
/// not an adversary pair or delta is not positive.
inline SeedBundle raise_pair_power(SeedBundle b, int i, int j, double delta,
                                   double eps = kEps) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!b.graph.is_adversary_pair(i, j)) {
    throw std::invalid_argument("(" + std::to_string(i) + "," +
                                std::to_string(j) +
                                ") is not an adversary pair");
  }
  std::vector<double> powers = b.graph.powers();
  powers[i] += delta;
  powers[j] += delta;
  b.graph = b.graph.with_powers(std::move(powers));
  b.equilibrium.add(i, j, delta);
  b.equilibrium.add(j, i, delta);
  b.lineage.push_back(
      {LineageStep::Op::raise_pair, 0.0, std::min(i, j), std::max(i, j), delta});
  detail::verify_balanced_row(b, i, eps);
  detail::verify_balanced_row(b, j, eps);
  return b;
}

/// Adds a new country with zero power and a single adversary edge to
/// `attach`; the equilibrium is bordered by a zero row and column. Attaching
/// to an adversary-free country with positive power cannot stay balanced
/// (its self-allocation would have to vanish) and is rejected.
inline SeedBundle attach_zero_power_adversary(SeedBundle b, int attach,
                                              double eps = kEps) {
  b.graph.check_index(attach);
  if (!b.graph.has_adversaries(attach) && b.graph.power(attach) > eps) {
    throw std::invalid_argument(
        "attaching an adversary to adversary-free country " +
        std::to_string(attach) + " with positive power cannot stay balanced");
  }
  std::vector<double> powers = b.graph.powers();
  const int fresh = static_cast<int>(powers.size());
  powers.push_back(0.0);
  std::vector<IndexPair> adversary_edges = b.graph.adversary_edges();
  const IndexPair edge{attach, fresh};
  adversary_edges.insert(
      std::lower_bound(adversary_edges.begin(), adversary_edges.end(), edge),
      edge);
  // A previously adversary-free attach target (necessarily powerless here)
  // moves from self-allocation to the adversary regime; both rows are zero.
  if (!b.graph.has_adversaries(attach)) b.equilibrium.set(attach, attach, 0.0);
  b.graph = EnvironmentGraph(std::move(powers), b.graph.friend_edges(),
                             std::move(adversary_edges));
  b.equilibrium.append_row();
  b.lineage.push_back({LineageStep::Op::attach_node, 0.0, attach, -1, 0.0});
  detail::verify_balanced_row(b, attach, eps);
  detail::verify_balanced_row(b, fresh, eps);
  return b;
}

/// Reproducible random signed graph: integer powers uniform on
/// [power_lo, power_hi], each pair drawn as an edge with probability
/// edge_density, each edge adversarial with probability sign_ratio (friendly
/// otherwise).
inline EnvironmentGraph random_instance(int n, double edge_density,
                                        int power_lo, int power_hi,
                                        double sign_ratio, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("country count must be nonnegative");
  if (power_lo < 0 || power_hi < power_lo) {
    throw std::invalid_argument("invalid power range");
  }
  if (edge_density < 0.0 || edge_density > 1.0 || sign_ratio < 0.0 ||
      sign_ratio > 1.0) {
    throw std::invalid_argument("densities must lie in [0,1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> power(power_lo, power_hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<double> powers(n);
  for (auto& p : powers) p = power(rng);
  std::vector<IndexPair> friends;
  std::vector<IndexPair> adversaries;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < edge_density) {
        (coin(rng) < sign_ratio ? adversaries : friends).push_back({i, j});
      }
    }
  }
  return EnvironmentGraph(std::move(powers), std::move(friends),
                          std::move(adversaries));
}

/// Grows a random balanced bundle: starts from an equal-power adversary pair
/// and applies `steps` random growth moves (raise a random pair by a random
/// integer delta, or attach a powerless adversary to a random country).
/// Every prefix of the construction is balanced; deterministic under seed.
inline SeedBundle random_balanced_instance(int steps, std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
  std::mt19937_64 rng(seed);
  SeedBundle b = seed_bundle(std::uniform_int_distribution<int>(1, 10)(rng));
  for (int s = 0; s < steps; ++s) {
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      const auto& edges = b.graph.adversary_edges();
      const auto& e = edges[std::uniform_int_distribution<std::size_t>(
          0, edges.size() - 1)(rng)];
      const double delta = std::uniform_int_distribution<int>(1, 9)(rng);
      b = raise_pair_power(std::move(b), e.first, e.second, delta);
    } else {
      // Every country in this family sits on an adversary edge, so any
      // attach target is valid.
      const int attach = std::uniform_int_distribution<int>(
          0, b.graph.country_count() - 1)(rng);
      b = attach_zero_power_adversary(std::move(b), attach);
    }
  }
  return b;
}

/// Rebuilds a bundle from its construction log. The log must begin with the
/// seed record.
inline SeedBundle replay_lineage(const std::vector<LineageStep>& lineage) {
  if (lineage.empty() || lineage.front().op != LineageStep::Op::seed) {
    throw std::invalid_argument("lineage must begin with a seed record");
  }
  SeedBundle b = seed_bundle(lineage.front().power);
  for (std::size_t s = 1; s < lineage.size(); ++s) {
    const LineageStep& step = lineage[s];
    switch (step.op) {
      case LineageStep::Op::raise_pair:
        b = raise_pair_power(std::move(b), step.i, step.j, step.delta);
        break;
      case LineageStep::Op::attach_node:
        b = attach_zero_power_adversary(std::move(b), step.i);
        break;
      case LineageStep::Op::seed:
        throw std::invalid_argument("unexpected second seed record");
    }
  }
  return b;
}

}  // namespace pag
