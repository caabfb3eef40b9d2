// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. See README.md for file formats and exit codes.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pag/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pag - model, check, solve and generate power allocation games"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too

  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit machine-readable JSON on stdout");
  double tolerance = pag::kEps;
  app.add_option("--tolerance", tolerance,
                 "absolute comparison tolerance (default 1e-9)");

  std::string instance_path, allocation_path;

  auto* check = app.add_subcommand(
      "check", "verify whether an allocation is a balanced equilibrium");
  check->add_option("instance", instance_path, "instance JSON file")
      ->required();
  check->add_option("allocation", allocation_path, "allocation JSON file")
      ->required();

  auto* states = app.add_subcommand(
      "states", "print support, threat and state per country");
  states->add_option("instance", instance_path, "instance JSON file")
      ->required();
  states->add_option("allocation", allocation_path, "allocation JSON file")
      ->required();

  pag::SolveOptions solve_opts;
  auto* solve = app.add_subcommand(
      "solve", "decide existence of a balanced equilibrium and construct one");
  solve->add_option("instance", instance_path, "instance JSON file")
      ->required();
  solve->add_option("--method", solve_opts.method,
                    "auto | lp | complete | flow (default auto)")
      ->check(CLI::IsMember({"auto", "lp", "complete", "flow"}));
  solve->add_option("-o,--out", solve_opts.out_path,
                    "write the solution file here on success");
  solve->add_option("--cap", solve_opts.subset_cap,
                    "subset-enumeration cap for witness extraction")
      ->check(CLI::Range(0, 24));

  pag::GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->add_option("--mode", gen_opts.mode, "random | balanced (default random)")
      ->check(CLI::IsMember({"random", "balanced"}));
  gen->add_option("-o,--out", gen_opts.out_path, "instance output path")
      ->required();
  gen->add_option("--seed", gen_opts.seed, "RNG seed (default 0)");
  gen->add_option("--steps", gen_opts.steps,
                  "construction steps for balanced mode (default 5)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--n", gen_opts.n, "country count for random mode");
  gen->add_option("--density", gen_opts.density,
                  "edge probability for random mode");
  gen->add_option("--sign-ratio", gen_opts.sign_ratio,
                  "probability an edge is adversarial");
  gen->add_option("--power-lo", gen_opts.power_lo, "minimum integer power");
  gen->add_option("--power-hi", gen_opts.power_hi, "maximum integer power");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  solve_opts.eps = tolerance;

  pag::RunReport report;
  if (check->parsed()) {
    report = pag::cmd_check(instance_path, allocation_path, tolerance);
  } else if (states->parsed()) {
    report = pag::cmd_states(instance_path, allocation_path, tolerance);
  } else if (solve->parsed()) {
    report = pag::cmd_solve(instance_path, solve_opts);
  } else if (gen->parsed()) {
    report = pag::cmd_gen(gen_opts);
  }

  if (json_mode) {
    std::cout << report.machine.dump(2) << "\n";
  } else if (report.exit_code >= 2) {
    std::cerr << report.human;
  } else {
    std::cout << report.human;
  }
  return report.exit_code;
}
