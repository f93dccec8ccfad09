#include <random>

#include "doctest.h"
#include "gradlab/error.hpp"
#include "gradlab/permgrp.hpp"
#include "oracles.hpp"

using namespace gradlab;

TEST_CASE("act and compose") {
  Perm t = Perm::from_cycles(3, {{0, 1}});
  CHECK(t.act(0) == 1);
  CHECK_THROWS_AS(t.act(3), std::out_of_range);
  CHECK(compose(t, t).is_identity());
  Perm c = Perm::from_cycles(3, {{0, 1, 2}});
  // p then q: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1.
  CHECK(compose(c, t) == Perm::from_cycles(3, {{1, 2}}));
  // The other order gives (0 2).
  CHECK(compose(t, c) == Perm::from_cycles(3, {{0, 2}}));
  // Exhaustive check of the convention over S3.
  for (const auto& a : oracle::all_perms(3)) {
    for (const auto& b : oracle::all_perms(3)) {
      CHECK(compose(Perm(a), Perm(b)).images() == oracle::mul(a, b));
    }
  }
  CHECK_THROWS_AS(Perm(std::vector<int>{0, 0}), std::invalid_argument);
  CHECK(c.pow(3).is_identity());
  CHECK(c.pow(-1) == c.inverse());
}

TEST_CASE("group_order examples") {
  PermGroup s4(4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(group_order(s4) == 24);
  CHECK(group_order(PermGroup(4, {Perm::identity(4)})) == 1);
  CHECK(group_order(PermGroup(5, {})) == 1);
  std::vector<Perm> klein{Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})};
  CHECK(oracle::closure_order({klein[0].images(), klein[1].images()}, 4) == 4);
  CHECK(group_order(PermGroup(4, klein)) == 4);
}

TEST_CASE("subgroup_index examples") {
  PermGroup s3(3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})});
  std::vector<Perm> h{Perm::from_cycles(3, {{0, 1}})};
  CHECK(subgroup_index(s3, h) == 3);
  CHECK(subgroup_index(s3, s3.generators()) == 1);
  PermGroup s4(4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2, 3}})});
  std::vector<Perm> c3{Perm::from_cycles(4, {{0, 1, 2}})};
  CHECK(oracle::closure_order({c3[0].images()}, 4) == 3);
  CHECK(subgroup_index(s4, c3) == 8);
  PermGroup a4(4, {Perm::from_cycles(4, {{0, 1, 2}}), Perm::from_cycles(4, {{1, 2, 3}})});
  std::vector<Perm> odd{Perm::from_cycles(4, {{0, 1}})};
  CHECK_THROWS_AS(subgroup_index(a4, odd), std::invalid_argument);
}

TEST_CASE("stabilizer chain order matches exhaustive closure on random groups") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int degree = 3 + trial % 6;
    const int ngens = 1 + trial % 3;
    std::vector<Perm> gens;
    std::vector<oracle::Images> raw;
    for (int g = 0; g < ngens; ++g) {
      std::vector<int> img(static_cast<std::size_t>(degree));
      std::iota(img.begin(), img.end(), 0);
      // Sparse-ish random permutations keep many groups small.
      const int swaps = 1 + static_cast<int>(rng() % 2);
      for (int s = 0; s < swaps; ++s) std::swap(img[rng() % img.size()], img[rng() % img.size()]);
      raw.push_back(img);
      gens.emplace_back(img);
    }
    const std::size_t exhaustive = oracle::closure_order(raw, static_cast<std::size_t>(degree));
    if (exhaustive > 10000) continue;
    PermGroup g(static_cast<std::size_t>(degree), gens);
    CHECK(g.order() == exhaustive);
    CHECK(g.elements().size() == exhaustive);
    for (const Perm& x : gens) CHECK(g.contains(x));
    // Index times subgroup order recovers the group order.
    std::vector<Perm> h{gens.front()};
    CHECK(subgroup_index(g, h) * PermGroup(g.degree(), h).order() == g.order());
  }
}

TEST_CASE("membership rejects non-members") {
  PermGroup c4(4, {Perm::from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(c4.contains(Perm::from_cycles(4, {{0, 2}, {1, 3}})));
  CHECK_FALSE(c4.contains(Perm::from_cycles(4, {{0, 1}})));
  CHECK_FALSE(c4.contains(Perm::identity(5)));
  CHECK(c4.orbit(1) == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("diagonal images realize the intersection of kernels") {
  // Z -> Z/2 and Z -> Z/3: diagonal action is Z/6.
  std::vector<Perm> z2{Perm::from_cycles(2, {{0, 1}})};
  std::vector<Perm> z3{Perm::from_cycles(3, {{0, 1, 2}})};
  auto diag = diagonal_images({z2, z3});
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].degree() == 5);
  CHECK(PermGroup(5, diag).order() == 6);
  CHECK_THROWS_AS(diagonal_images({z2, {}}), std::invalid_argument);
}

TEST_CASE("power subgroup in the finite shadow") {
  PermGroup s3(3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})});
  CHECK(power_subgroup(s3, 2).order() == 3);  // squares generate A3
  CHECK(power_subgroup(s3, 6).order() == 1);
  PermGroup c4(4, {Perm::from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(power_subgroup(c4, 2).order() == 2);
  CHECK_THROWS_AS(c4.elements(2), ResourceExhausted);
}
