// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pag/model.hpp"

// Shared worked examples and implementation-independent oracles.
//
// The three-country fixture: powers (8,6,4), everyone adversaries.
//   m1..m3 each leave exactly one survivor; m4 is symmetric and leaves all
//   three precarious (the balanced one).

namespace fixtures {

inline pag::EnvironmentGraph triangle_graph() {
  return pag::EnvironmentGraph({8, 6, 4}, {}, {{0, 1}, {0, 2}, {1, 2}});
}

inline pag::AllocationMatrix m1() {
  return pag::AllocationMatrix::from_dense({{2, 4, 2}, {2, 0, 4}, {0, 4, 0}});
}
inline pag::AllocationMatrix m2() {
  return pag::AllocationMatrix::from_dense({{0, 4, 4}, {5, 0, 1}, {4, 0, 0}});
}
inline pag::AllocationMatrix m3() {
  return pag::AllocationMatrix::from_dense({{0, 6, 2}, {6, 0, 0}, {3, 1, 0}});
}
inline pag::AllocationMatrix m4() {
  return pag::AllocationMatrix::from_dense({{0, 5, 3}, {5, 0, 1}, {3, 1, 0}});
}

/// Four countries, powers (8,6,6,2): a triangle on {0,1,2} plus a pendant
/// adversary 3 of country 2. Admits the edge vector (5,3,1,2).
inline pag::EnvironmentGraph pendant_graph() {
  return pag::EnvironmentGraph({8, 6, 6, 2}, {},
                               {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

/// Adversary path 0-1-2 with powers (2,3,2): satisfies the necessary power
/// condition yet admits no balanced equilibrium.
inline pag::EnvironmentGraph path_graph() {
  return pag::EnvironmentGraph({2, 3, 2}, {}, {{0, 1}, {1, 2}});
}

/// Adversary star: 0 and 1 both against 2, powers (2,3,5). The unique
/// balanced edge vector is (2,3).
inline pag::EnvironmentGraph star_graph() {
  return pag::EnvironmentGraph({2, 3, 5}, {}, {{0, 2}, {1, 2}});
}

// ---------------------------------------------------------------------------
// Entry-walk support/threat oracle
// ---------------------------------------------------------------------------

/// Recomputes all supports and threats by attributing every cell u[i][j]
/// once: to sigma_j when j is a friend of i (self included), and to both
/// sigma_i and tau_j when j is an adversary of i. Walks the full dense index
/// space, independent of the sparse row layout and of the per-country sums
/// the implementation uses.
inline std::pair<std::vector<double>, std::vector<double>>
oracle_support_threat(const pag::EnvironmentGraph& g,
                      const pag::AllocationMatrix& u) {
  const int n = g.country_count();
  std::vector<double> sigma(n, 0.0), tau(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double value = u.at(i, j);
      if (value == 0.0) continue;
      const auto& fr = g.friends(i);
      if (std::binary_search(fr.begin(), fr.end(), j)) {
        sigma[j] += value;
      } else if (g.is_adversary_pair(i, j)) {
        sigma[i] += value;
        tau[j] += value;
      }
    }
  }
  return {sigma, tau};
}

// ---------------------------------------------------------------------------
// Brute-force deviation search
// ---------------------------------------------------------------------------

/// Exhaustive grid search over integer replacement rows for `country`
/// (compositions of its power over the permitted columns). Returns a row the
/// country strongly prefers, or empty. Independent oracle for the sampled
/// Nash check.
inline std::optional<std::vector<double>> brute_force_profitable_deviation(
    const pag::EnvironmentGraph& g, const pag::AllocationMatrix& u,
    int country) {
  const auto cols = g.permitted(country);
  const int budget = static_cast<int>(g.power(country));
  std::vector<double> row(g.country_count(), 0.0);
  std::optional<std::vector<double>> found;

  auto recurse = [&](auto&& self, std::size_t k, int remaining) -> void {
    if (found) return;
    if (k + 1 == cols.size()) {
      row[cols[k]] = remaining;
      pag::Deviation d{country, row};
      const auto v = pag::apply_deviation(g, u, d);
      if (pag::strongly_prefers(g, country, u, v)) found = row;
      row[cols[k]] = 0.0;
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      row[cols[k]] = take;
      self(self, k + 1, remaining - take);
      row[cols[k]] = 0.0;
    }
  };
  if (!cols.empty()) recurse(recurse, 0, budget);
  return found;
}

// ---------------------------------------------------------------------------
// Random instance families for the oracle-equivalence suites
// ---------------------------------------------------------------------------

/// Random bipartite adversary instance: countries 0..a-1 against a..a+b-1,
/// integer powers, each cross pair adversarial with probability `density`.
inline pag::EnvironmentGraph random_bipartite_instance(std::mt19937_64& rng,
                                                       int max_side = 5,
                                                       int power_hi = 20,
                                                       double density = 0.5) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int a = side(rng);
  const int b = side(rng);
  std::uniform_int_distribution<int> power(0, power_hi);
  std::vector<double> powers(a + b);
  for (auto& p : powers) p = power(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<pag::IndexPair> adversaries;
  for (int i = 0; i < a; ++i) {
    for (int j = a; j < a + b; ++j) {
      if (coin(rng) < density) adversaries.push_back({i, j});
    }
  }
  return pag::EnvironmentGraph(std::move(powers), {}, std::move(adversaries));
}

/// Random complete adversary clique with integer powers.
inline pag::EnvironmentGraph random_clique_instance(std::mt19937_64& rng,
                                                    int lo = 2, int hi = 8,
                                                    int power_hi = 20) {
  const int n = std::uniform_int_distribution<int>(lo, hi)(rng);
  std::uniform_int_distribution<int> power(0, power_hi);
  std::vector<double> powers(n);
  for (auto& p : powers) p = power(rng);
  std::vector<pag::IndexPair> adversaries;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) adversaries.push_back({i, j});
  }
  return pag::EnvironmentGraph(std::move(powers), {}, std::move(adversaries));
}

// ---------------------------------------------------------------------------
// Random valid allocations
// ---------------------------------------------------------------------------

/// A random valid allocation matrix for `g`: each row splits the country's
/// power over its permitted columns with Dirichlet weights.
inline pag::AllocationMatrix random_allocation(const pag::EnvironmentGraph& g,
                                               std::mt19937_64& rng) {
  pag::AllocationMatrix u(g.country_count());
  std::exponential_distribution<double> expo(1.0);
  for (int i = 0; i < g.country_count(); ++i) {
    const auto& cols = g.permitted(i);
    std::vector<double> w(cols.size());
    double total = 0.0;
    for (auto& x : w) {
      x = expo(rng);
      total += x;
    }
    if (total <= 0.0) total = 1.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      u.set(i, cols[k], g.power(i) * w[k] / total);
    }
  }
  return u;
}

}  // namespace fixtures
