// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pag/model.hpp"

// Balanced equilibria. A power allocation matrix U is a balanced equilibrium
// when
//   1. every adversary-free country keeps all power for itself,
//   2. every country with adversaries spends nothing on itself and all of its
//      power on its adversaries,
//   3. allocations are symmetric across every adversary edge.
// Equivalently: the edge vector v = beta(U) over the adversary subgraph is
// nonnegative and solves C v = pi, where C is the subgraph's incidence matrix
// and pi the vector of total powers of the countries with adversaries.

namespace pag {

/// Edge values over the adversary subgraph, one per edge in the fixed
/// lexicographic (min,max) edge ordering.
using EdgeVector = std::vector<double>;

// ---------------------------------------------------------------------------
// AdversaryIncidence
// ---------------------------------------------------------------------------

/// The adversary subgraph with its fixed orderings: vertices are the
/// countries that have at least one adversary (ascending), edges the
/// adversary pairs as (min,max) in lexicographic order. `c` is the n_a-by-q
/// 0/1 incidence matrix in those orderings and `pi` the vertex powers.
struct AdversaryIncidence {
  std::vector<int> vertices;
  std::vector<IndexPair> edges;
  std::vector<double> pi;
  std::vector<std::uint8_t> c;  // row-major, vertices x edges

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  std::uint8_t c_at(int row, int col) const {
    return c[static_cast<std::size_t>(row) * edges.size() + col];
  }

  /// Row of a country in the incidence system, or -1 when it has no
  /// adversaries.
  int row_of(int country) const {
    return country >= 0 && country < static_cast<int>(row_index_.size())
               ? row_index_[country]
               : -1;
  }

  std::vector<int> row_index_;  // country -> row, -1 when absent
};

inline AdversaryIncidence adversary_incidence(const EnvironmentGraph& g) {
  AdversaryIncidence inc;
  const int n = g.country_count();
  inc.row_index_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (g.has_adversaries(i)) {
      inc.row_index_[i] = static_cast<int>(inc.vertices.size());
      inc.vertices.push_back(i);
      inc.pi.push_back(g.power(i));
    }
  }
  inc.edges = g.adversary_edges();  // already (min,max) lexicographic
  inc.c.assign(static_cast<std::size_t>(inc.vertices.size()) *
                   inc.edges.size(),
               0);
  for (int k = 0; k < inc.edge_count(); ++k) {
    const auto& [a, b] = inc.edges[k];
    inc.c[static_cast<std::size_t>(inc.row_index_[a]) * inc.edges.size() + k] = 1;
    inc.c[static_cast<std::size_t>(inc.row_index_[b]) * inc.edges.size() + k] = 1;
  }
  return inc;
}

// ---------------------------------------------------------------------------
// beta and its inverse
// ---------------------------------------------------------------------------

/// beta(U): reads the upper entry u[min][max] of every adversary pair in the
/// fixed edge ordering.
inline EdgeVector beta(const EnvironmentGraph& g, const AllocationMatrix& u) {
  EdgeVector v;
  v.reserve(g.adversary_edges().size());
  for (const auto& [a, b] : g.adversary_edges()) v.push_back(u.at(a, b));
  return v;
}

/// Builds the balanced allocation matrix determined by an edge vector:
/// u[i_k][j_k] = u[j_k][i_k] = v_k on every adversary pair and u[i][i] = p_i
/// for adversary-free countries. Requires v >= 0 and C v = pi (each country
/// with adversaries must have its incident edge values sum to its power);
/// throws std::invalid_argument otherwise.
inline AllocationMatrix from_edge_vector(const EnvironmentGraph& g,
                                         const EdgeVector& v,
                                         double eps = kEps) {
  const auto& edges = g.adversary_edges();
  if (v.size() != edges.size()) {
    throw std::invalid_argument("edge vector has " + std::to_string(v.size()) +
                                " entries, expected " +
                                std::to_string(edges.size()));
  }
  const int n = g.country_count();
  std::vector<double> incident_sum(n, 0.0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (v[k] < -eps) {
      throw std::invalid_argument("edge vector component " + std::to_string(k) +
                                  " is negative");
    }
    incident_sum[edges[k].first] += v[k];
    incident_sum[edges[k].second] += v[k];
  }
  for (int i = 0; i < n; ++i) {
    if (g.has_adversaries(i) &&
        std::abs(incident_sum[i] - g.power(i)) > eps) {
      throw std::invalid_argument(
          "edge vector violates C v = pi at country " + std::to_string(i));
    }
  }
  AllocationMatrix u(n);
  for (int i = 0; i < n; ++i) {
    if (!g.has_adversaries(i)) u.set(i, i, g.power(i));
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double value = v[k] < 0.0 ? 0.0 : v[k];
    u.set(edges[k].first, edges[k].second, value);
    u.set(edges[k].second, edges[k].first, value);
  }
  return u;
}

// ---------------------------------------------------------------------------
// is_balanced
// ---------------------------------------------------------------------------

enum class BalanceVerdict : std::uint8_t {
  balanced,
  invalid_matrix,  // not a valid power allocation matrix at all
  condition1,      // adversary-free country not fully self-allocated
  condition2,      // country with adversaries keeps power or misallocates it
  condition3,      // asymmetric allocation across an adversary edge
};

struct BalanceReport {
  BalanceVerdict verdict = BalanceVerdict::balanced;
  int country = -1;       // offender for conditions 1 and 2
  IndexPair edge{-1, -1};  // offender for condition 3
  std::string detail;

  bool balanced() const { return verdict == BalanceVerdict::balanced; }
  explicit operator bool() const { return balanced(); }
};

inline const char* to_string(BalanceVerdict v) {
  switch (v) {
    case BalanceVerdict::balanced: return "balanced";
    case BalanceVerdict::invalid_matrix: return "invalid-matrix";
    case BalanceVerdict::condition1: return "condition 1";
    case BalanceVerdict::condition2: return "condition 2";
    case BalanceVerdict::condition3: return "condition 3";
  }
  return "?";
}

/// Checks the three balanced-equilibrium conditions and reports the first
/// violation. An invalid allocation matrix (bad support or row sums) yields
/// verdict invalid_matrix with the validity diagnostic.
inline BalanceReport is_balanced(const EnvironmentGraph& g,
                                 const AllocationMatrix& u, double eps = kEps) {
  BalanceReport r;
  if (auto err = allocation_error(g, u, eps)) {
    r.verdict = BalanceVerdict::invalid_matrix;
    r.detail = *err;
    return r;
  }
  const int n = g.country_count();
  for (int i = 0; i < n; ++i) {
    if (!g.has_adversaries(i)) {
      if (std::abs(u.at(i, i) - g.power(i)) > eps) {
        r.verdict = BalanceVerdict::condition1;
        r.country = i;
        r.detail = "country " + std::to_string(i) +
                   " has no adversaries but does not self-allocate its power";
        return r;
      }
    } else {
      if (std::abs(u.at(i, i)) > eps) {
        r.verdict = BalanceVerdict::condition2;
        r.country = i;
        r.detail = "country " + std::to_string(i) +
                   " has adversaries but allocates to itself";
        return r;
      }
      double on_adversaries = 0.0;
      for (int j : g.adversaries(i)) on_adversaries += u.at(i, j);
      if (std::abs(on_adversaries - g.power(i)) > eps) {
        r.verdict = BalanceVerdict::condition2;
        r.country = i;
        r.detail = "country " + std::to_string(i) +
                   " does not spend its full power on its adversaries";
        return r;
      }
    }
  }
  for (const auto& [a, b] : g.adversary_edges()) {
    if (std::abs(u.at(a, b) - u.at(b, a)) > eps) {
      r.verdict = BalanceVerdict::condition3;
      r.edge = {a, b};
      r.detail = "allocations across adversary pair (" + std::to_string(a) +
                 "," + std::to_string(b) + ") are not symmetric";
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Necessary power condition
// ---------------------------------------------------------------------------

struct PowerConditionResult {
  bool holds = true;
  std::vector<int> violators;
};

/// Existence of a balanced equilibrium requires every country with
/// adversaries to be outweighed by them combined: sum of adversary powers
/// >= own power.
inline PowerConditionResult necessary_condition(const EnvironmentGraph& g,
                                                double eps = kEps) {
  PowerConditionResult r;
  for (int i = 0; i < g.country_count(); ++i) {
    if (!g.has_adversaries(i)) continue;
    double adversary_power = 0.0;
    for (int j : g.adversaries(i)) adversary_power += g.power(j);
    if (adversary_power < g.power(i) - eps) {
      r.holds = false;
      r.violators.push_back(i);
    }
  }
  return r;
}

}  // namespace pag
