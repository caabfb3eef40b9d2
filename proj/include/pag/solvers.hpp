// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pag/balanced.hpp"
#include "pag/maxflow.hpp"
#include "pag/model.hpp"
#include "pag/rational.hpp"
#include "pag/simplex.hpp"

// Existence deciders and constructors for balanced equilibria:
//   - lp_feasibility: phase-one simplex on C v = pi, v >= 0 (any graph),
//   - solve_complete: inductive peeling for complete adversary cliques,
//   - extended_power_condition: Hall-type subset check on bipartite
//     adversary graphs,
//   - solve_bipartite: source/sink-saturating max flow on bipartite
//     adversary graphs,
//   - solve: structure-based dispatcher over the three routes.

namespace pag {

enum class SolveStatus : std::uint8_t { feasible, infeasible, numerical_failure };

inline constexpr int kDefaultSubsetCap = 20;

// ---------------------------------------------------------------------------
// LP feasibility
// ---------------------------------------------------------------------------

struct LpResult {
  SolveStatus status = SolveStatus::infeasible;
  EdgeVector v;  // meaningful when feasible
  long long iterations = 0;
};

namespace detail {

inline bool is_integral(double x) {
  return std::abs(x) < 9.0e15 && x == std::floor(x);
}

inline bool all_integral(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!is_integral(x)) return false;
  }
  return true;
}

}  // namespace detail

/// Decides whether { v >= 0 : C v = pi } is nonempty by minimizing the sum of
/// one slack per row in C v + z = pi. Because pi >= 0 the slacks double as
/// the artificial starting basis; zero optimal slack is exactly feasibility.
/// Integral demands run in exact rational arithmetic, so the verdict and the
/// returned vertex carry no rounding; otherwise floating point with the
/// standard tolerance is used. Iteration cap 10*(q+n_a)^2 turns numerical
/// non-convergence into an explicit status distinct from infeasibility.
inline LpResult lp_feasibility(const AdversaryIncidence& inc) {
  const int m = inc.vertex_count();
  const int q = inc.edge_count();
  LpResult out;
  if (q == 0 && m == 0) {
    out.status = SolveStatus::feasible;
    return out;
  }
  const long long cap = 10LL * (q + m) * (q + m);

  if (detail::all_integral(inc.pi)) {
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(q));
    std::vector<Rational> b(m);
    for (int r = 0; r < m; ++r) {
      for (int k = 0; k < q; ++k) a[r][k] = Rational(inc.c_at(r, k));
      b[r] = Rational(static_cast<long long>(inc.pi[r]));
    }
    const auto res = phase_one_feasible<Rational>(a, b, Rational(0), cap);
    out.iterations = res.iterations;
    switch (res.status) {
      case SimplexStatus::feasible: {
        out.status = SolveStatus::feasible;
        out.v.reserve(q);
        for (const auto& x : res.solution) out.v.push_back(x.to_double());
        break;
      }
      case SimplexStatus::infeasible:
        out.status = SolveStatus::infeasible;
        break;
      case SimplexStatus::iteration_limit:
        out.status = SolveStatus::numerical_failure;
        break;
    }
    return out;
  }

  std::vector<std::vector<double>> a(m, std::vector<double>(q));
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k < q; ++k) a[r][k] = inc.c_at(r, k);
  }
  const auto res = phase_one_feasible<double>(a, inc.pi, kEps, cap);
  out.iterations = res.iterations;
  switch (res.status) {
    case SimplexStatus::feasible:
      out.status = SolveStatus::feasible;
      out.v = res.solution;
      break;
    case SimplexStatus::infeasible:
      out.status = SolveStatus::infeasible;
      break;
    case SimplexStatus::iteration_limit:
      out.status = SolveStatus::numerical_failure;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Three-player closed form
// ---------------------------------------------------------------------------

/// Unique balanced edge vector of a three-player adversary triangle, in edge
/// order (1,2),(1,3),(2,3):
///   ((p1+p2-p3)/2, (p1+p3-p2)/2, (p2+p3-p1)/2).
/// Empty when some player outweighs the other two combined.
inline std::optional<std::array<double, 3>> three_player_closed_form(
    double p1, double p2, double p3, double eps = kEps) {
  std::array<double, 3> v{(p1 + p2 - p3) / 2.0, (p1 + p3 - p2) / 2.0,
                          (p2 + p3 - p1) / 2.0};
  for (auto& x : v) {
    if (x < -eps) return std::nullopt;
    if (x < 0.0) x = 0.0;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Complete adversary graphs: inductive peeling
// ---------------------------------------------------------------------------

/// True when the adversary pairs form a complete clique over the countries
/// that have adversaries.
inline bool adversary_graph_is_clique(const EnvironmentGraph& g) {
  long long n_a = 0;
  for (int i = 0; i < g.country_count(); ++i) {
    if (g.has_adversaries(i)) ++n_a;
  }
  return static_cast<long long>(g.adversary_edges().size()) ==
         n_a * (n_a - 1) / 2;
}

/// Constructs a balanced equilibrium on a complete adversary clique, or
/// returns empty when the necessary power condition fails (on cliques the
/// condition is also sufficient). Repeatedly pairs the currently strongest
/// country with the weakest: the edge between them absorbs the weakest
/// country's full remaining power, which drops out, until three players
/// remain for the closed form. Throws std::invalid_argument when the
/// adversary graph is not a clique.
inline std::optional<AllocationMatrix> solve_complete(
    const EnvironmentGraph& g, double eps = kEps) {
  if (!adversary_graph_is_clique(g)) {
    throw std::invalid_argument(
        "solve_complete requires a complete adversary clique");
  }
  if (!necessary_condition(g, eps).holds) return std::nullopt;

  struct Member {
    double power;
    int country;
  };
  std::vector<Member> live;
  for (int i = 0; i < g.country_count(); ++i) {
    if (g.has_adversaries(i)) live.push_back({g.power(i), i});
  }

  std::map<IndexPair, double> edge_value;
  auto by_power_desc = [](const Member& a, const Member& b) {
    return a.power > b.power;
  };
  std::stable_sort(live.begin(), live.end(), by_power_desc);

  while (live.size() > 3) {
    Member& strongest = live.front();
    const Member weakest = live.back();
    edge_value[ordered_pair(strongest.country, weakest.country)] =
        weakest.power;
    strongest.power -= weakest.power;
    live.pop_back();
    std::stable_sort(live.begin(), live.end(), by_power_desc);
  }

  if (live.size() == 3) {
    std::sort(live.begin(), live.end(),
              [](const Member& a, const Member& b) {
                return a.country < b.country;
              });
    const auto v = three_player_closed_form(live[0].power, live[1].power,
                                            live[2].power, eps);
    if (!v) return std::nullopt;  // unreachable when the condition held
    edge_value[ordered_pair(live[0].country, live[1].country)] = (*v)[0];
    edge_value[ordered_pair(live[0].country, live[2].country)] = (*v)[1];
    edge_value[ordered_pair(live[1].country, live[2].country)] = (*v)[2];
  } else if (live.size() == 2) {
    // The condition forces equal powers on a two-clique.
    edge_value[ordered_pair(live[0].country, live[1].country)] =
        (live[0].power + live[1].power) / 2.0;
  }

  EdgeVector v;
  v.reserve(g.adversary_edges().size());
  for (const auto& e : g.adversary_edges()) {
    auto it = edge_value.find(e);
    v.push_back(it == edge_value.end() ? 0.0 : it->second);
  }
  return from_edge_vector(g, v, eps);
}

// ---------------------------------------------------------------------------
// Bipartite adversary graphs
// ---------------------------------------------------------------------------

struct Bipartition {
  std::vector<int> left;
  std::vector<int> right;
};

/// Two-colors the adversary subgraph by breadth-first traversal, component by
/// component (the least-index vertex of each component goes left). Empty when
/// an odd cycle exists.
inline std::optional<Bipartition> bipartition(const EnvironmentGraph& g) {
  const int n = g.country_count();
  std::vector<int> color(n, -1);
  for (int start = 0; start < n; ++start) {
    if (!g.has_adversaries(start) || color[start] != -1) continue;
    color[start] = 0;
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int w : g.adversaries(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (int i = 0; i < n; ++i) {
    if (color[i] == 0) b.left.push_back(i);
    if (color[i] == 1) b.right.push_back(i);
  }
  return b;
}

struct SubsetWitness {
  std::vector<int> subset;     // countries, ascending
  char side = 'L';             // which camp the subset was drawn from
  double subset_power = 0.0;
  double neighborhood_power = 0.0;
};

struct SubsetConditionResult {
  bool holds = true;
  std::optional<SubsetWitness> witness;  // minimal violating subset
};

/// Hall-type extended power condition on a bipartite adversary graph: every
/// subset of one camp must be outweighed by the union of its adversaries.
/// Enumerates all subsets of both camps, so the count of countries with
/// adversaries is limited to `cap` (default 20, at most 24); beyond that it
/// refuses with std::length_error and the flow solver is the route to use.
/// On failure the witness is a violating subset of minimum size (ties broken
/// toward smaller indices).
inline SubsetConditionResult extended_power_condition(
    const EnvironmentGraph& g, const Bipartition& b,
    int cap = kDefaultSubsetCap, double eps = kEps) {
  if (cap < 0 || cap > 24) {
    throw std::invalid_argument("subset-enumeration cap must lie in [0,24]");
  }
  const int contested = static_cast<int>(b.left.size() + b.right.size());
  if (contested > cap) {
    throw std::length_error(
        "extended power condition on " + std::to_string(contested) +
        " contested countries exceeds the cap of " + std::to_string(cap) +
        "; use the flow solver");
  }
  SubsetConditionResult result;
  const int n = g.country_count();

  auto check_side = [&](const std::vector<int>& side,
                        char tag) -> std::optional<SubsetWitness> {
    const int k = static_cast<int>(side.size());
    if (k == 0) return std::nullopt;
    // Bit positions over the *other* camp for neighborhood unions.
    std::vector<int> other_pos(n, -1);
    std::vector<double> other_power;
    for (int i = 0; i < k; ++i) {
      for (int j : g.adversaries(side[i])) {
        if (other_pos[j] == -1) {
          other_pos[j] = static_cast<int>(other_power.size());
          other_power.push_back(g.power(j));
        }
      }
    }
    std::vector<std::uint64_t> nbr_mask(k, 0);
    for (int i = 0; i < k; ++i) {
      for (int j : g.adversaries(side[i])) {
        nbr_mask[i] |= std::uint64_t{1} << other_pos[j];
      }
    }

    const std::uint64_t total = std::uint64_t{1} << k;
    std::vector<double> subset_power(total, 0.0);
    std::vector<std::uint64_t> subset_nbrs(total, 0);
    std::optional<SubsetWitness> best;
    int best_size = k + 1;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      const int low = std::countr_zero(mask);
      const std::uint64_t rest = mask & (mask - 1);
      subset_power[mask] = subset_power[rest] + g.power(side[low]);
      subset_nbrs[mask] = subset_nbrs[rest] | nbr_mask[low];
      const int size = std::popcount(mask);
      if (size >= best_size) continue;
      double nbr_power = 0.0;
      for (std::uint64_t ms = subset_nbrs[mask]; ms != 0; ms &= ms - 1) {
        nbr_power += other_power[std::countr_zero(ms)];
      }
      if (nbr_power < subset_power[mask] - eps) {
        SubsetWitness w;
        w.side = tag;
        w.subset_power = subset_power[mask];
        w.neighborhood_power = nbr_power;
        for (std::uint64_t ms = mask; ms != 0; ms &= ms - 1) {
          w.subset.push_back(side[std::countr_zero(ms)]);
        }
        best = std::move(w);
        best_size = size;
      }
    }
    return best;
  };

  auto left_witness = check_side(b.left, 'L');
  auto right_witness = check_side(b.right, 'R');
  std::optional<SubsetWitness> witness;
  if (left_witness && right_witness) {
    witness = left_witness->subset.size() <= right_witness->subset.size()
                  ? left_witness
                  : right_witness;
  } else {
    witness = left_witness ? left_witness : right_witness;
  }
  if (witness) {
    result.holds = false;
    result.witness = std::move(witness);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Flow reduction
// ---------------------------------------------------------------------------

/// Source/sink-augmented network of a bipartite adversary graph: source arcs
/// carry each left country's power, sink arcs each right country's power, and
/// every adversary pair becomes an unbounded middle arc (realized as the
/// sentinel 1 + total power, which no middle arc can reach).
inline FlowNetwork build_flow_network(const EnvironmentGraph& g,
                                      const Bipartition& b) {
  FlowNetwork net;
  const int interior = static_cast<int>(b.left.size() + b.right.size());
  net.node_count = interior + 2;
  net.source = 0;
  net.sink = interior + 1;
  net.country_of_node.assign(net.node_count, -1);

  std::vector<int> node_of(g.country_count(), -1);
  std::vector<bool> is_left(g.country_count(), false);
  {
    std::vector<int> interior_countries;
    interior_countries.reserve(interior);
    interior_countries.insert(interior_countries.end(), b.left.begin(),
                              b.left.end());
    interior_countries.insert(interior_countries.end(), b.right.begin(),
                              b.right.end());
    std::sort(interior_countries.begin(), interior_countries.end());
    for (int idx = 0; idx < interior; ++idx) {
      node_of[interior_countries[idx]] = idx + 1;
      net.country_of_node[idx + 1] = interior_countries[idx];
    }
  }
  for (int i : b.left) is_left[i] = true;

  double total_power = 0.0;
  for (double p : g.powers()) total_power += p;
  const double sentinel = 1.0 + total_power;

  for (int i : b.left) {
    net.source_arcs.push_back(net.add_arc(net.source, node_of[i], g.power(i)));
  }
  for (const auto& [a, c] : g.adversary_edges()) {
    const int from = is_left[a] ? a : c;
    const int to = is_left[a] ? c : a;
    net.middle_arcs.push_back(net.add_arc(node_of[from], node_of[to], sentinel));
  }
  for (int j : b.right) {
    net.sink_arcs.push_back(net.add_arc(node_of[j], net.sink, g.power(j)));
  }
  return net;
}

struct FlowSolveResult {
  std::optional<AllocationMatrix> matrix;
  EdgeVector v;
  double flow_value = 0.0;
  /// Infeasibility diagnostic: countries whose source/sink arcs the maximum
  /// flow left unsaturated.
  std::vector<int> unsaturated_sources;
  std::vector<int> unsaturated_sinks;
};

/// Balanced equilibrium via max flow: a balanced equilibrium exists exactly
/// when some maximum flow saturates every source arc and every sink arc; the
/// middle-arc flows are then the edge vector.
inline FlowSolveResult solve_bipartite(const EnvironmentGraph& g,
                                       const Bipartition& b,
                                       double eps = kEps) {
  FlowNetwork net = build_flow_network(g, b);
  FlowSolveResult result;
  result.flow_value = max_flow(net);
  for (int arc : net.source_arcs) {
    if (net.arcs[arc].flow < net.arcs[arc].capacity - eps) {
      result.unsaturated_sources.push_back(net.country_of_node[net.arcs[arc].to]);
    }
  }
  for (int arc : net.sink_arcs) {
    if (net.arcs[arc].flow < net.arcs[arc].capacity - eps) {
      result.unsaturated_sinks.push_back(net.country_of_node[net.arcs[arc].from]);
    }
  }
  if (!result.unsaturated_sources.empty() || !result.unsaturated_sinks.empty()) {
    return result;
  }
  result.v.reserve(net.middle_arcs.size());
  for (int arc : net.middle_arcs) result.v.push_back(net.arcs[arc].flow);
  result.matrix = from_edge_vector(g, result.v, eps);
  return result;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

enum class SolveMethod : std::uint8_t { automatic, lp, complete, flow };

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<AllocationMatrix> matrix;
  EdgeVector v;
  std::string method;  // "complete" | "bipartite-flow" | "lp"
  // Witnesses, populated on infeasibility where the route provides one.
  std::vector<int> power_condition_violators;  // complete route
  std::vector<int> unsaturated_sources;        // flow route
  std::vector<int> unsaturated_sinks;
};

/// Decides existence of a balanced equilibrium and constructs one. Dispatch
/// by adversary-graph structure: complete clique -> peeling constructor,
/// bipartite -> max flow, anything else -> LP feasibility. A forced method
/// that does not fit the instance throws std::invalid_argument. Any returned
/// matrix passes is_balanced.
inline SolveResult solve(const EnvironmentGraph& g,
                         SolveMethod method = SolveMethod::automatic,
                         double eps = kEps) {
  SolveResult result;
  if (method == SolveMethod::automatic) {
    if (adversary_graph_is_clique(g)) {
      method = SolveMethod::complete;
    } else if (bipartition(g).has_value()) {
      method = SolveMethod::flow;
    } else {
      method = SolveMethod::lp;
    }
  }

  switch (method) {
    case SolveMethod::complete: {
      result.method = "complete";
      auto u = solve_complete(g, eps);  // throws when not a clique
      if (u) {
        result.status = SolveStatus::feasible;
        result.v = beta(g, *u);
        result.matrix = std::move(u);
      } else {
        result.power_condition_violators = necessary_condition(g, eps).violators;
      }
      break;
    }
    case SolveMethod::flow: {
      result.method = "bipartite-flow";
      auto b = bipartition(g);
      if (!b) {
        throw std::invalid_argument("adversary graph is not bipartite");
      }
      auto flow = solve_bipartite(g, *b, eps);
      if (flow.matrix) {
        result.status = SolveStatus::feasible;
        result.matrix = std::move(flow.matrix);
        result.v = std::move(flow.v);
      } else {
        result.unsaturated_sources = std::move(flow.unsaturated_sources);
        result.unsaturated_sinks = std::move(flow.unsaturated_sinks);
      }
      break;
    }
    case SolveMethod::lp: {
      result.method = "lp";
      auto lp = lp_feasibility(adversary_incidence(g));
      result.status = lp.status;
      if (lp.status == SolveStatus::feasible) {
        result.matrix = from_edge_vector(g, lp.v, eps);
        result.v = std::move(lp.v);
      }
      break;
    }
    case SolveMethod::automatic:
      break;  // resolved above
  }
  return result;
}

}  // namespace pag
