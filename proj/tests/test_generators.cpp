// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pag/generators.hpp"
#include "pag/solvers.hpp"

using namespace pag;

TEST_CASE("seed bundles") {
  const auto b = seed_bundle(5);
  CHECK(b.graph.country_count() == 2);
  CHECK(b.graph.powers() == std::vector<double>{5, 5});
  CHECK(b.graph.adversary_edges() == std::vector<IndexPair>{{0, 1}});
  CHECK(b.equilibrium.at(0, 1) == 5);
  CHECK(b.equilibrium.at(1, 0) == 5);
  CHECK(is_balanced(b.graph, b.equilibrium).balanced());
  REQUIRE(b.lineage.size() == 1);
  CHECK(b.lineage[0].op == LineageStep::Op::seed);

  SUBCASE("wrapping an external pair validates it") {
    CHECK_NOTHROW(make_bundle(fixtures::triangle_graph(), fixtures::m4()));
    CHECK_THROWS_AS(make_bundle(fixtures::triangle_graph(), fixtures::m1()),
                    std::invalid_argument);
  }
}

TEST_CASE("raising an adversary pair keeps the bundle balanced") {
  auto b = make_bundle(fixtures::triangle_graph(), fixtures::m4());

  SUBCASE("the worked example: edge (0,1), delta 2") {
    const auto grown = raise_pair_power(b, 0, 1, 2);
    CHECK(grown.graph.powers() == std::vector<double>{10, 8, 4});
    CHECK(grown.equilibrium.at(0, 1) == 7);
    CHECK(grown.equilibrium.at(1, 0) == 7);
    CHECK(is_balanced(grown.graph, grown.equilibrium).balanced());
    // The input bundle is untouched.
    CHECK(b.graph.powers() == std::vector<double>{8, 6, 4});
  }

  SUBCASE("single pair grows in both endpoints") {
    const auto grown = raise_pair_power(seed_bundle(5), 0, 1, 1);
    CHECK(grown.graph.powers() == std::vector<double>{6, 6});
    CHECK(grown.equilibrium.at(0, 1) == 6);
  }

  SUBCASE("rejects non-adversary pairs and nonpositive deltas") {
    CHECK_THROWS_AS(raise_pair_power(seed_bundle(1), 0, 1, 0.0),
                    std::invalid_argument);
    EnvironmentGraph g({2, 2, 2}, {{0, 1}}, {{1, 2}});
    auto u = AllocationMatrix(3);
    u.set(0, 0, 2);
    u.set(1, 2, 2);
    u.set(2, 1, 2);
    auto fb = make_bundle(g, u);
    CHECK_THROWS_AS(raise_pair_power(fb, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(raise_pair_power(fb, 0, 2, 1), std::invalid_argument);
  }
}

TEST_CASE("attaching a powerless adversary") {
  auto b = make_bundle(fixtures::triangle_graph(), fixtures::m4());

  SUBCASE("borders the equilibrium with zeros") {
    const auto grown = attach_zero_power_adversary(b, 2);
    CHECK(grown.graph.country_count() == 4);
    CHECK(grown.graph.power(3) == 0);
    CHECK(grown.graph.is_adversary_pair(2, 3));
    for (int j = 0; j < 4; ++j) {
      CHECK(grown.equilibrium.at(3, j) == 0);
      CHECK(grown.equilibrium.at(j, 3) == 0);
    }
    CHECK(is_balanced(grown.graph, grown.equilibrium).balanced());
  }

  SUBCASE("with a pair raise it reproduces the pendant fixture") {
    const auto grown =
        raise_pair_power(attach_zero_power_adversary(b, 2), 2, 3, 2);
    CHECK(grown.graph.powers() == std::vector<double>{8, 6, 6, 2});
    CHECK(grown.graph.adversary_edges() ==
          fixtures::pendant_graph().adversary_edges());
    CHECK(beta(grown.graph, grown.equilibrium) == EdgeVector{5, 3, 1, 2});
  }

  SUBCASE("rejects adversary-free targets with positive power") {
    EnvironmentGraph g({4, 4, 3}, {}, {{0, 1}});
    AllocationMatrix u(3);
    u.set(0, 1, 4);
    u.set(1, 0, 4);
    u.set(2, 2, 3);
    auto fb = make_bundle(g, u);
    CHECK_THROWS_AS(attach_zero_power_adversary(fb, 2),
                    std::invalid_argument);
  }

  SUBCASE("accepts adversary-free targets with zero power") {
    EnvironmentGraph g({4, 4, 0}, {}, {{0, 1}});
    AllocationMatrix u(3);
    u.set(0, 1, 4);
    u.set(1, 0, 4);
    auto fb = make_bundle(g, u);
    const auto grown = attach_zero_power_adversary(fb, 2);
    CHECK(grown.graph.country_count() == 4);
    CHECK(grown.graph.is_adversary_pair(2, 3));
    CHECK(is_balanced(grown.graph, grown.equilibrium).balanced());
  }

  SUBCASE("never changes the states of existing countries") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto bundle = random_balanced_instance(15, seed);
      const auto before = state_vector(bundle.graph, bundle.equilibrium);
      const int target =
          static_cast<int>(seed) % bundle.graph.country_count();
      const auto grown = attach_zero_power_adversary(bundle, target);
      const auto after = state_vector(grown.graph, grown.equilibrium);
      for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(after[i] == before[i]);
      }
      CHECK(after.back() == State::precarious);  // 0 support, 0 threat
    }
  }
}

TEST_CASE("pair raises on disjoint edges commute") {
  EnvironmentGraph g({3, 3, 4, 4}, {}, {{0, 1}, {2, 3}});
  AllocationMatrix u(4);
  u.set(0, 1, 3);
  u.set(1, 0, 3);
  u.set(2, 3, 4);
  u.set(3, 2, 4);
  const auto b = make_bundle(g, u);

  const auto ab = raise_pair_power(raise_pair_power(b, 0, 1, 2), 2, 3, 5);
  const auto ba = raise_pair_power(raise_pair_power(b, 2, 3, 5), 0, 1, 2);
  CHECK(ab.graph.powers() == ba.graph.powers());
  CHECK(ab.equilibrium == ba.equilibrium);
}

TEST_CASE("random instances are reproducible") {
  const auto a = random_instance(6, 0.5, 0, 10, 0.5, 1);
  const auto b = random_instance(6, 0.5, 0, 10, 0.5, 1);
  CHECK(a.powers() == b.powers());
  CHECK(a.friend_edges() == b.friend_edges());
  CHECK(a.adversary_edges() == b.adversary_edges());

  const auto c = random_instance(6, 0.5, 0, 10, 0.5, 2);
  CHECK((a.powers() != c.powers() || a.friend_edges() != c.friend_edges() ||
         a.adversary_edges() != c.adversary_edges()));

  SUBCASE("density bounds") {
    const auto empty = random_instance(5, 0.0, 1, 5, 0.5, 3);
    CHECK(empty.friend_edges().empty());
    CHECK(empty.adversary_edges().empty());

    const auto total_war = random_instance(5, 1.0, 1, 5, 1.0, 3);
    CHECK(total_war.adversary_edges().size() == 10);
    CHECK(total_war.friend_edges().empty());
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(random_instance(-1, 0.5, 0, 5, 0.5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(random_instance(3, 0.5, 5, 0, 0.5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(random_instance(3, 1.5, 0, 5, 0.5, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("random balanced bundles stay balanced and solvable") {
  SUBCASE("zero steps is the bare pair") {
    const auto b = random_balanced_instance(0, 11);
    CHECK(b.graph.country_count() == 2);
    CHECK(b.graph.power(0) == b.graph.power(1));
    CHECK(beta(b.graph, b.equilibrium) ==
          EdgeVector{b.graph.power(0)});
  }

  SUBCASE("fixed seed, fixed lineage") {
    const auto a = random_balanced_instance(3, 7);
    const auto b = random_balanced_instance(3, 7);
    CHECK(a.lineage == b.lineage);
    CHECK(a.graph.powers() == b.graph.powers());
    CHECK(a.equilibrium == b.equilibrium);
    CHECK(is_balanced(a.graph, a.equilibrium).balanced());
  }

  SUBCASE("closure and solver cross-check") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto b = random_balanced_instance(40, seed);
      REQUIRE(is_balanced(b.graph, b.equilibrium).balanced());
      const auto solved = solve(b.graph);
      CHECK(solved.status == SolveStatus::feasible);
      REQUIRE(solved.matrix.has_value());
      CHECK(is_balanced(b.graph, *solved.matrix).balanced());
    }
  }

  SUBCASE("a long construction remains balanced") {
    const auto b = random_balanced_instance(2000, 99);
    CHECK(is_balanced(b.graph, b.equilibrium).balanced());
  }

  SUBCASE("negative step counts are rejected") {
    CHECK_THROWS_AS(random_balanced_instance(-1, 0), std::invalid_argument);
  }
}

TEST_CASE("lineage replay reproduces the bundle") {
  const auto original = random_balanced_instance(50, 12345);
  const auto replayed = replay_lineage(original.lineage);
  CHECK(replayed.graph.powers() == original.graph.powers());
  CHECK(replayed.graph.adversary_edges() == original.graph.adversary_edges());
  CHECK(replayed.equilibrium == original.equilibrium);
  CHECK(replayed.lineage == original.lineage);

  CHECK_THROWS_AS(replay_lineage({}), std::invalid_argument);
  CHECK_THROWS_AS(
      replay_lineage({{LineageStep::Op::raise_pair, 0.0, 0, 1, 1.0}}),
      std::invalid_argument);
}
