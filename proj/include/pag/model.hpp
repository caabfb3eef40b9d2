// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core model of the power allocation game: a signed environment graph of
// countries, power allocation matrices, the support/threat maps, country
// states, the preference predicates, and a sampled Nash check.
//
// Index convention: countries are 0-based everywhere, including file formats.

namespace pag {

/// Absolute tolerance for comparisons on real-valued powers and allocations.
/// Instances with integer data are exact: sums and differences of integers
/// below 2^53 incur no rounding, so a zero tolerance also works for them.
inline constexpr double kEps = 1e-9;

using IndexPair = std::pair<int, int>;

inline IndexPair ordered_pair(int a, int b) {
  return a < b ? IndexPair{a, b} : IndexPair{b, a};
}

enum class State : std::uint8_t { safe, precarious, unsafe };

using StateVector = std::vector<State>;

inline const char* to_string(State s) {
  switch (s) {
    case State::safe: return "safe";
    case State::precarious: return "precarious";
    case State::unsafe: return "unsafe";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// EnvironmentGraph
// ---------------------------------------------------------------------------

/// A simple undirected signed graph. Vertices are countries with nonnegative
/// total powers; each edge is either a friendship or an adversary relation,
/// never both. A country is always a friend of itself.
///
/// The relation structure lives in an immutable shared block, so copies and
/// powers-only derivations (`with_powers`) cost O(n) at most. Safe for
/// concurrent read-only use.
class EnvironmentGraph {
  /// Edge lists and adjacency, immutable once built.
  struct Topology {
    std::vector<IndexPair> friend_edges;
    std::vector<IndexPair> adversary_edges;
    std::vector<std::vector<int>> friends;      // includes self, ascending
    std::vector<std::vector<int>> adversaries;  // ascending
    std::vector<std::vector<int>> permitted;    // friends ∪ adversaries
  };

 public:
  EnvironmentGraph() : topology_(empty_topology()) {}

  /// Validates and normalizes the inputs: edges are stored as (min,max)
  /// pairs in lexicographic order with duplicates removed.
  /// Throws std::invalid_argument on negative power, self-loop, an index out
  /// of range, or a pair that appears with both signs.
  EnvironmentGraph(std::vector<double> powers,
                   std::vector<IndexPair> friend_edges,
                   std::vector<IndexPair> adversary_edges)
      : powers_(std::move(powers)) {
    const int n = country_count();
    for (int i = 0; i < n; ++i) {
      if (!(powers_[i] >= 0.0)) {
        throw std::invalid_argument("country " + std::to_string(i) +
                                    " has negative power");
      }
    }
    auto topology = std::make_shared<Topology>();
    topology->friend_edges = std::move(friend_edges);
    topology->adversary_edges = std::move(adversary_edges);
    normalize_edge_list(topology->friend_edges, n, "friend");
    normalize_edge_list(topology->adversary_edges, n, "adversary");
    check_disjoint_signs(*topology);
    build_adjacency(*topology, n);
    topology_ = std::move(topology);
  }

  /// Same relations, different powers. The topology block is shared, so this
  /// is an O(n) operation however large the edge set is.
  EnvironmentGraph with_powers(std::vector<double> powers) const {
    if (powers.size() != powers_.size()) {
      throw std::invalid_argument("power vector length changed");
    }
    EnvironmentGraph g;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (!(powers[i] >= 0.0)) {
        throw std::invalid_argument("country " + std::to_string(i) +
                                    " has negative power");
      }
    }
    g.powers_ = std::move(powers);
    g.topology_ = topology_;
    return g;
  }

  int country_count() const { return static_cast<int>(powers_.size()); }

  double power(int i) const {
    check_index(i);
    return powers_[i];
  }

  const std::vector<double>& powers() const { return powers_; }
  const std::vector<IndexPair>& friend_edges() const {
    return topology_->friend_edges;
  }
  const std::vector<IndexPair>& adversary_edges() const {
    return topology_->adversary_edges;
  }

  /// F_i: country i's friends, including i itself. Ascending order.
  const std::vector<int>& friends(int i) const {
    check_index(i);
    return topology_->friends[i];
  }

  /// A_i: country i's adversaries. Ascending order.
  const std::vector<int>& adversaries(int i) const {
    check_index(i);
    return topology_->adversaries[i];
  }

  /// F_i ∪ A_i: the columns country i may allocate power to.
  const std::vector<int>& permitted(int i) const {
    check_index(i);
    return topology_->permitted[i];
  }

  bool has_adversaries(int i) const { return !adversaries(i).empty(); }

  bool is_adversary_pair(int i, int j) const {
    check_index(i);
    check_index(j);
    const auto& adj = topology_->adversaries[i];
    return std::binary_search(adj.begin(), adj.end(), j);
  }

  bool is_permitted(int i, int j) const {
    check_index(i);
    check_index(j);
    const auto& cols = topology_->permitted[i];
    return std::binary_search(cols.begin(), cols.end(), j);
  }

  void check_index(int i) const {
    if (i < 0 || i >= country_count()) {
      throw std::out_of_range("country index " + std::to_string(i) +
                              " out of range [0," +
                              std::to_string(country_count()) + ")");
    }
  }

 private:
  static const std::shared_ptr<const Topology>& empty_topology() {
    static const auto empty = std::make_shared<const Topology>();
    return empty;
  }

  static void normalize_edge_list(std::vector<IndexPair>& edges, int n,
                                  const char* kind) {
    for (auto& e : edges) {
      if (e.first == e.second) {
        throw std::invalid_argument(std::string(kind) + " edge (" +
                                    std::to_string(e.first) + "," +
                                    std::to_string(e.second) +
                                    ") is a self-loop");
      }
      if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
        throw std::invalid_argument(std::string(kind) + " edge (" +
                                    std::to_string(e.first) + "," +
                                    std::to_string(e.second) +
                                    ") references an unknown country");
      }
      e = ordered_pair(e.first, e.second);
    }
    if (!std::is_sorted(edges.begin(), edges.end())) {
      std::sort(edges.begin(), edges.end());
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  static void check_disjoint_signs(const Topology& t) {
    // Both lists are sorted; a single merge pass finds any shared pair.
    auto f = t.friend_edges.begin();
    auto a = t.adversary_edges.begin();
    while (f != t.friend_edges.end() && a != t.adversary_edges.end()) {
      if (*f < *a) {
        ++f;
      } else if (*a < *f) {
        ++a;
      } else {
        throw std::invalid_argument("pair (" + std::to_string(f->first) + "," +
                                    std::to_string(f->second) +
                                    ") is listed as both friend and adversary");
      }
    }
  }

  static void build_adjacency(Topology& t, int n) {
    t.friends.assign(n, {});
    t.adversaries.assign(n, {});
    for (int i = 0; i < n; ++i) t.friends[i].push_back(i);
    for (const auto& [a, b] : t.friend_edges) {
      t.friends[a].push_back(b);
      t.friends[b].push_back(a);
    }
    for (const auto& [a, b] : t.adversary_edges) {
      t.adversaries[a].push_back(b);
      t.adversaries[b].push_back(a);
    }
    t.permitted.assign(n, {});
    for (int i = 0; i < n; ++i) {
      std::sort(t.friends[i].begin(), t.friends[i].end());
      std::sort(t.adversaries[i].begin(), t.adversaries[i].end());
      t.permitted[i].resize(t.friends[i].size() + t.adversaries[i].size());
      std::merge(t.friends[i].begin(), t.friends[i].end(),
                 t.adversaries[i].begin(), t.adversaries[i].end(),
                 t.permitted[i].begin());
    }
  }

  std::vector<double> powers_;
  std::shared_ptr<const Topology> topology_;
};

// ---------------------------------------------------------------------------
// AllocationMatrix
// ---------------------------------------------------------------------------

struct RowEntry {
  int col = 0;
  double value = 0.0;
  friend bool operator==(const RowEntry&, const RowEntry&) = default;
};

/// Nonnegative n-by-n matrix stored row-compressed (balanced equilibria are
/// sparse: each row carries at most deg(i)+1 entries). Zero entries are not
/// stored, so equality is structural.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;
  explicit AllocationMatrix(int n) : rows_(n) {}

  static AllocationMatrix from_dense(
      const std::vector<std::vector<double>>& dense) {
    AllocationMatrix m(static_cast<int>(dense.size()));
    for (int i = 0; i < m.size(); ++i) {
      if (static_cast<int>(dense[i].size()) != m.size()) {
        throw std::invalid_argument("allocation matrix is not square");
      }
      for (int j = 0; j < m.size(); ++j) {
        if (dense[i][j] != 0.0) m.rows_[i].push_back({j, dense[i][j]});
      }
    }
    return m;
  }

  int size() const { return static_cast<int>(rows_.size()); }

  void append_row() { rows_.emplace_back(); }

  double at(int i, int j) const {
    check(i, j);
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const RowEntry& e, int c) { return e.col < c; });
    return (it != row.end() && it->col == j) ? it->value : 0.0;
  }

  void set(int i, int j, double value) {
    check(i, j);
    auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const RowEntry& e, int c) { return e.col < c; });
    if (it != row.end() && it->col == j) {
      if (value == 0.0) {
        row.erase(it);
      } else {
        it->value = value;
      }
    } else if (value != 0.0) {
      row.insert(it, {j, value});
    }
  }

  void add(int i, int j, double delta) { set(i, j, at(i, j) + delta); }

  const std::vector<RowEntry>& row(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("row index");
    return rows_[i];
  }

  double row_sum(int i) const {
    double s = 0.0;
    for (const auto& e : row(i)) s += e.value;
    return s;
  }

  std::vector<std::vector<double>> to_dense() const {
    std::vector<std::vector<double>> dense(size(),
                                           std::vector<double>(size(), 0.0));
    for (int i = 0; i < size(); ++i) {
      for (const auto& e : rows_[i]) dense[i][e.col] = e.value;
    }
    return dense;
  }

  friend bool operator==(const AllocationMatrix&,
                         const AllocationMatrix&) = default;

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size()) {
      throw std::out_of_range("matrix index (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  }

  std::vector<std::vector<RowEntry>> rows_;
};

/// Explains why `u` is not a valid power allocation matrix for `g`:
/// wrong dimension, a negative entry, an entry outside F_i ∪ A_i, or a row
/// sum that misses the country's total power. Returns nullopt when valid.
inline std::optional<std::string> allocation_error(const EnvironmentGraph& g,
                                                   const AllocationMatrix& u,
                                                   double eps = kEps) {
  const int n = g.country_count();
  if (u.size() != n) {
    return "matrix is " + std::to_string(u.size()) + "x" +
           std::to_string(u.size()) + " but the instance has " +
           std::to_string(n) + " countries";
  }
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const auto& e : u.row(i)) {
      if (e.value < -eps) {
        return "u[" + std::to_string(i) + "][" + std::to_string(e.col) +
               "] is negative";
      }
      if (!g.is_permitted(i, e.col) && e.value > eps) {
        return "u[" + std::to_string(i) + "][" + std::to_string(e.col) +
               "] allocates to a country that is neither friend nor adversary";
      }
      sum += e.value;
    }
    if (std::abs(sum - g.power(i)) > eps) {
      return "row " + std::to_string(i) + " sums to " + std::to_string(sum) +
             ", expected total power " + std::to_string(g.power(i));
    }
  }
  return std::nullopt;
}

inline bool is_valid_allocation(const EnvironmentGraph& g,
                                const AllocationMatrix& u, double eps = kEps) {
  return !allocation_error(g, u, eps).has_value();
}

// ---------------------------------------------------------------------------
// Support, threat, states
// ---------------------------------------------------------------------------

/// sigma_i(U): power received from friends (self included) plus own power
/// aimed at adversaries.
inline double total_support(const EnvironmentGraph& g,
                            const AllocationMatrix& u, int i) {
  g.check_index(i);
  double s = 0.0;
  for (int j : g.friends(i)) s += u.at(j, i);
  for (int j : g.adversaries(i)) s += u.at(i, j);
  return s;
}

/// tau_i(U): power aimed at country i by its adversaries.
inline double total_threat(const EnvironmentGraph& g,
                           const AllocationMatrix& u, int i) {
  g.check_index(i);
  double t = 0.0;
  for (int j : g.adversaries(i)) t += u.at(j, i);
  return t;
}

inline State classify_state(double support, double threat, double eps = kEps) {
  const double d = support - threat;
  if (d > eps) return State::safe;
  if (d < -eps) return State::unsafe;
  return State::precarious;
}

inline StateVector state_vector(const EnvironmentGraph& g,
                                const AllocationMatrix& u, double eps = kEps) {
  StateVector x(g.country_count());
  for (int i = 0; i < g.country_count(); ++i) {
    x[i] = classify_state(total_support(g, u, i), total_threat(g, u, i), eps);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Preference predicates (the game's sufficient conditions)
// ---------------------------------------------------------------------------

/// Country i weakly prefers V over U: every friend is safe or precarious in V
/// (or already unsafe in U), and every adversary is unsafe or precarious in V
/// (or already safe in U).
inline bool weakly_prefers(const EnvironmentGraph& g, int i,
                           const AllocationMatrix& u,
                           const AllocationMatrix& v, double eps = kEps) {
  g.check_index(i);
  const StateVector xu = state_vector(g, u, eps);
  const StateVector xv = state_vector(g, v, eps);
  for (int j : g.friends(i)) {
    if (xv[j] == State::unsafe && xu[j] != State::unsafe) return false;
  }
  for (int j : g.adversaries(i)) {
    if (xv[j] == State::safe && xu[j] != State::safe) return false;
  }
  return true;
}

/// Country i is indifferent between U and V: everyone it has a relation with
/// (itself included) is in the same state under both.
inline bool indifferent(const EnvironmentGraph& g, int i,
                        const AllocationMatrix& u, const AllocationMatrix& v,
                        double eps = kEps) {
  g.check_index(i);
  const StateVector xu = state_vector(g, u, eps);
  const StateVector xv = state_vector(g, v, eps);
  for (int j : g.permitted(i)) {
    if (xu[j] != xv[j]) return false;
  }
  return true;
}

/// Country i strongly prefers V over U: it is safe or precarious under V but
/// unsafe under U.
inline bool strongly_prefers(const EnvironmentGraph& g, int i,
                             const AllocationMatrix& u,
                             const AllocationMatrix& v, double eps = kEps) {
  g.check_index(i);
  const State si_u =
      classify_state(total_support(g, u, i), total_threat(g, u, i), eps);
  const State si_v =
      classify_state(total_support(g, v, i), total_threat(g, v, i), eps);
  return si_u == State::unsafe && si_v != State::unsafe;
}

// ---------------------------------------------------------------------------
// Deviations and the sampled Nash check
// ---------------------------------------------------------------------------

/// A replacement row for one country: nonnegative, supported on F_i ∪ A_i,
/// summing to the country's total power.
struct Deviation {
  int country = -1;
  std::vector<double> new_row;
};

/// Replaces row `d.country` of `u` with `d.new_row` after validating it.
inline AllocationMatrix apply_deviation(const EnvironmentGraph& g,
                                        const AllocationMatrix& u,
                                        const Deviation& d, double eps = kEps) {
  g.check_index(d.country);
  const int n = g.country_count();
  if (static_cast<int>(d.new_row.size()) != n) {
    throw std::invalid_argument("deviation row has wrong length");
  }
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = d.new_row[j];
    if (x < -eps) throw std::invalid_argument("deviation row has a negative entry");
    if (x > eps && !g.is_permitted(d.country, j)) {
      throw std::invalid_argument(
          "deviation allocates outside the permitted columns");
    }
    sum += x;
  }
  if (std::abs(sum - g.power(d.country)) > eps) {
    throw std::invalid_argument("deviation row does not sum to total power");
  }
  AllocationMatrix v = u;
  for (const auto& e : u.row(d.country)) v.set(d.country, e.col, 0.0);
  for (int j = 0; j < n; ++j) {
    if (d.new_row[j] != 0.0) v.set(d.country, j, d.new_row[j]);
  }
  return v;
}

struct NashReport {
  bool passed = true;
  long long samples_per_country = 0;
  /// At most one witness per country: a sampled deviation the deviator
  /// strongly prefers over the checked matrix.
  std::vector<Deviation> witnesses;
};

/// Probabilistic Nash evidence: draws `samples` replacement rows per country,
/// uniform (symmetric Dirichlet) over the row simplex restricted to the
/// permitted columns, and reports any draw the deviator strongly prefers.
/// Passing is evidence, not proof. Deterministic under a fixed seed.
///
/// Only the deviator's own state can certify a strong preference, and its
/// threat never depends on its own row, so each sample costs O(deg).
inline NashReport sampled_nash_check(const EnvironmentGraph& g,
                                     const AllocationMatrix& u,
                                     long long samples, std::uint64_t seed,
                                     double eps = kEps) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (auto err = allocation_error(g, u, eps)) {
    throw std::invalid_argument("invalid allocation matrix: " + *err);
  }
  NashReport report;
  report.samples_per_country = samples;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);

  const int n = g.country_count();
  for (int i = 0; i < n; ++i) {
    const double p = g.power(i);
    const double threat = total_threat(g, u, i);
    double outside_support = 0.0;  // support to i from everyone else's rows
    for (int j : g.friends(i)) {
      if (j != i) outside_support += u.at(j, i);
    }
    const State state_u =
        classify_state(total_support(g, u, i), total_threat(g, u, i), eps);

    const auto& cols = g.permitted(i);
    std::vector<double> weights(cols.size());
    const auto& adv = g.adversaries(i);

    for (long long s = 0; s < samples; ++s) {
      double total = 0.0;
      for (auto& w : weights) {
        w = expo(rng);
        total += w;
      }
      if (total <= 0.0) continue;  // measure-zero guard
      // New row: p * w_k / total on column cols[k]. Recompute sigma_i only.
      double own = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const int j = cols[k];
        if (j == i || std::binary_search(adv.begin(), adv.end(), j)) {
          own += p * weights[k] / total;
        }
      }
      const State state_v = classify_state(outside_support + own, threat, eps);
      if (state_u == State::unsafe && state_v != State::unsafe) {
        Deviation d;
        d.country = i;
        d.new_row.assign(n, 0.0);
        for (std::size_t k = 0; k < cols.size(); ++k) {
          d.new_row[cols[k]] = p * weights[k] / total;
        }
        report.witnesses.push_back(std::move(d));
        report.passed = false;
        break;  // one witness per country is enough
      }
    }
  }
  return report;
}

/// Two allocation matrices are equilibrium equivalent when they induce the
/// same state vector.
inline bool equilibrium_equivalent(const EnvironmentGraph& g,
                                   const AllocationMatrix& u,
                                   const AllocationMatrix& v,
                                   double eps = kEps) {
  return state_vector(g, u, eps) == state_vector(g, v, eps);
}

}  // namespace pag
