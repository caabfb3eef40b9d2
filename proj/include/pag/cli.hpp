// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "pag/io.hpp"
#include "pag/solvers.hpp"

// Command implementations behind the pag binary. Exit codes:
//   0  success (balanced / feasible / generated)
//   1  a valid negative answer (not balanced, no balanced equilibrium)
//   2  usage, parse, or structure errors
//   3  numerical failure
// Machine-readable reports are deterministic for identical inputs and seeds;
// timings appear in the human rendering only.

namespace pag {

struct RunReport {
  int exit_code = 0;
  std::string human;
  json machine;
};

namespace detail {

inline std::string fmt_num(double x) {
  if (is_integral(x)) {
    return std::to_string(static_cast<long long>(x));
  }
  std::ostringstream out;
  out << x;
  return out.str();
}

inline std::string states_table(const EnvironmentGraph& g,
                                const AllocationMatrix& u, double eps) {
  std::ostringstream out;
  out << "country\tpower\tsigma\ttau\tstate\n";
  for (int i = 0; i < g.country_count(); ++i) {
    const double sigma = total_support(g, u, i);
    const double tau = total_threat(g, u, i);
    out << i << '\t' << fmt_num(g.power(i)) << '\t' << fmt_num(sigma) << '\t'
        << fmt_num(tau) << '\t' << to_string(classify_state(sigma, tau, eps))
        << '\n';
  }
  return out.str();
}

inline json states_json(const EnvironmentGraph& g, const AllocationMatrix& u,
                        double eps) {
  json sigma = json::array(), tau = json::array(), states = json::array();
  for (int i = 0; i < g.country_count(); ++i) {
    const double s = total_support(g, u, i);
    const double t = total_threat(g, u, i);
    sigma.push_back(s);
    tau.push_back(t);
    states.push_back(to_string(classify_state(s, t, eps)));
  }
  return json{{"sigma", sigma}, {"tau", tau}, {"states", states}};
}

inline RunReport input_error(const char* command, const std::string& what) {
  RunReport r;
  r.exit_code = 2;
  r.human = "error: " + what;
  r.machine = json{{"command", command}, {"error", what}};
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

inline RunReport cmd_check(const std::string& instance_path,
                           const std::string& allocation_path,
                           double eps = kEps) {
  EnvironmentGraph g;
  AllocationMatrix u;
  try {
    g = load_instance(instance_path);
    u = load_allocation(allocation_path);
  } catch (const std::exception& e) {
    return detail::input_error("check", e.what());
  }
  if (u.size() != g.country_count()) {
    return detail::input_error(
        "check", "allocation is " + std::to_string(u.size()) +
                     "-dimensional but the instance has " +
                     std::to_string(g.country_count()) + " countries");
  }

  const BalanceReport report = is_balanced(g, u, eps);
  RunReport r;
  r.exit_code = report.balanced() ? 0 : 1;
  r.machine = json{{"command", "check"},
                   {"balanced", report.balanced()},
                   {"verdict", to_string(report.verdict)}};
  if (!report.balanced()) {
    r.machine["detail"] = report.detail;
    if (report.country >= 0) r.machine["country"] = report.country;
    if (report.edge.first >= 0) {
      r.machine["edge"] = json::array({report.edge.first, report.edge.second});
    }
  }
  r.machine.update(detail::states_json(g, u, eps));

  std::ostringstream human;
  if (report.balanced()) {
    human << "balanced: yes\n";
  } else {
    human << "balanced: no (" << to_string(report.verdict);
    if (report.country >= 0) human << " at country " << report.country;
    if (report.edge.first >= 0) {
      human << " at pair (" << report.edge.first << "," << report.edge.second
            << ")";
    }
    human << ")\n  " << report.detail << "\n";
  }
  human << detail::states_table(g, u, eps);
  r.human = human.str();
  return r;
}

// ---------------------------------------------------------------------------
// states
// ---------------------------------------------------------------------------

inline RunReport cmd_states(const std::string& instance_path,
                            const std::string& allocation_path,
                            double eps = kEps) {
  EnvironmentGraph g;
  AllocationMatrix u;
  try {
    g = load_instance(instance_path);
    u = load_allocation(allocation_path);
  } catch (const std::exception& e) {
    return detail::input_error("states", e.what());
  }
  if (u.size() != g.country_count()) {
    return detail::input_error(
        "states", "allocation is " + std::to_string(u.size()) +
                      "-dimensional but the instance has " +
                      std::to_string(g.country_count()) + " countries");
  }
  RunReport r;
  r.machine = json{{"command", "states"}};
  r.machine.update(detail::states_json(g, u, eps));
  r.human = detail::states_table(g, u, eps);
  return r;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string method = "auto";  // auto | lp | complete | flow
  std::string out_path;         // solution file; empty writes nothing
  double eps = kEps;
  int subset_cap = kDefaultSubsetCap;
};

inline RunReport cmd_solve(const std::string& instance_path,
                           const SolveOptions& opts = {}) {
  EnvironmentGraph g;
  try {
    g = load_instance(instance_path);
  } catch (const std::exception& e) {
    return detail::input_error("solve", e.what());
  }

  SolveMethod method = SolveMethod::automatic;
  if (opts.method == "auto") {
    method = SolveMethod::automatic;
  } else if (opts.method == "lp") {
    method = SolveMethod::lp;
  } else if (opts.method == "complete") {
    method = SolveMethod::complete;
  } else if (opts.method == "flow") {
    method = SolveMethod::flow;
  } else {
    return detail::input_error("solve",
                               "unknown method '" + opts.method + "'");
  }

  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  try {
    result = solve(g, method, opts.eps);
  } catch (const std::exception& e) {
    // Structure mismatch for a forced method.
    return detail::input_error("solve", e.what());
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  RunReport r;
  r.machine = json{{"command", "solve"}, {"method", result.method}};
  std::ostringstream human;
  switch (result.status) {
    case SolveStatus::feasible: {
      r.exit_code = 0;
      r.machine["feasible"] = true;
      r.machine["v"] = result.v;
      r.machine["matrix"] = result.matrix->to_dense();
      human << "feasible: yes (method " << result.method << ")\n";
      human << "v = " << json(result.v).dump() << "\n";
      if (!opts.out_path.empty()) {
        try {
          save_solution(opts.out_path,
                        {result.method, result.v, *result.matrix});
        } catch (const std::exception& e) {
          return detail::input_error("solve", e.what());
        }
        human << "solution written to " << opts.out_path << "\n";
      }
      break;
    }
    case SolveStatus::infeasible: {
      r.exit_code = 1;
      r.machine["feasible"] = false;
      human << "infeasible: no balanced equilibrium exists (method "
            << result.method << ")\n";
      if (!result.power_condition_violators.empty()) {
        r.machine["witness"] = json{
            {"power_condition_violators", result.power_condition_violators}};
        human << "  power condition violated at countries "
              << json(result.power_condition_violators).dump() << "\n";
      } else if (!result.unsaturated_sources.empty() ||
                 !result.unsaturated_sinks.empty()) {
        json witness{{"unsaturated_sources", result.unsaturated_sources},
                     {"unsaturated_sinks", result.unsaturated_sinks}};
        human << "  max flow leaves source arcs "
              << json(result.unsaturated_sources).dump() << " and sink arcs "
              << json(result.unsaturated_sinks).dump() << " unsaturated\n";
        // A small bipartite instance also yields a violating-subset witness.
        if (auto b = bipartition(g)) {
          const int cap = std::clamp(opts.subset_cap, 0, 24);
          const int contested =
              static_cast<int>(b->left.size() + b->right.size());
          if (contested <= cap) {
            const auto cond = extended_power_condition(g, *b, cap, opts.eps);
            if (!cond.holds && cond.witness) {
              witness["violating_subset"] = cond.witness->subset;
              witness["subset_side"] = std::string(1, cond.witness->side);
              human << "  violating subset "
                    << json(cond.witness->subset).dump() << " (power "
                    << detail::fmt_num(cond.witness->subset_power)
                    << " vs adversaries "
                    << detail::fmt_num(cond.witness->neighborhood_power)
                    << ")\n";
            }
          }
        }
        r.machine["witness"] = std::move(witness);
      }
      break;
    }
    case SolveStatus::numerical_failure: {
      r.exit_code = 3;
      r.machine["feasible"] = nullptr;
      r.machine["error"] = "solver did not converge";
      human << "numerical failure: solver did not converge\n";
      break;
    }
  }
  human << "elapsed: " << elapsed << " ms\n";
  r.human = human.str();
  return r;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string mode = "random";  // random | balanced
  std::string out_path;
  std::uint64_t seed = 0;
  // random mode
  int n = 6;
  double density = 0.5;
  double sign_ratio = 0.5;
  int power_lo = 0;
  int power_hi = 10;
  // balanced mode
  int steps = 5;
};

namespace detail {

inline std::string sibling_path(const std::string& out, const char* tag,
                                const char* ext) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out.substr(0, out.size() - suffix.size()) + "." + tag + ext;
  }
  return out + "." + tag + ext;
}

}  // namespace detail

inline RunReport cmd_gen(const GenOptions& opts) {
  if (opts.out_path.empty()) {
    return detail::input_error("gen", "an output path is required");
  }
  RunReport r;
  std::ostringstream human;
  try {
    if (opts.mode == "random") {
      const EnvironmentGraph g =
          random_instance(opts.n, opts.density, opts.power_lo, opts.power_hi,
                          opts.sign_ratio, opts.seed);
      save_instance(opts.out_path, g);
      r.machine = json{{"command", "gen"},
                       {"mode", "random"},
                       {"instance", instance_to_json(g)},
                       {"instance_path", opts.out_path}};
      human << "instance with " << g.country_count() << " countries, "
            << g.friend_edges().size() << " friendships, "
            << g.adversary_edges().size() << " adversary pairs written to "
            << opts.out_path << "\n";
    } else if (opts.mode == "balanced") {
      const SeedBundle bundle = random_balanced_instance(opts.steps, opts.seed);
      const std::string equilibrium_path =
          detail::sibling_path(opts.out_path, "equilibrium", ".json");
      const std::string lineage_path =
          detail::sibling_path(opts.out_path, "lineage", ".jsonl");
      save_instance(opts.out_path, bundle.graph);
      save_allocation(equilibrium_path, bundle.equilibrium);
      save_lineage(lineage_path, bundle.lineage);
      r.machine = json{{"command", "gen"},
                       {"mode", "balanced"},
                       {"instance", instance_to_json(bundle.graph)},
                       {"instance_path", opts.out_path},
                       {"equilibrium_path", equilibrium_path},
                       {"lineage_path", lineage_path},
                       {"steps", opts.steps}};
      human << "balanced instance with " << bundle.graph.country_count()
            << " countries written to " << opts.out_path
            << " (equilibrium: " << equilibrium_path
            << ", lineage: " << lineage_path << ")\n";
    } else {
      return detail::input_error("gen", "unknown mode '" + opts.mode + "'");
    }
  } catch (const std::exception& e) {
    return detail::input_error("gen", e.what());
  }
  r.human = human.str();
  return r;
}

}  // namespace pag
