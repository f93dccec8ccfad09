#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "gradlab/chains.hpp"
#include "gradlab/error.hpp"
#include "gradlab/towers.hpp"
#include "oracles.hpp"

using namespace gradlab;

namespace {

std::vector<long long> nontrivial_sorted(std::vector<long long> d) {
  std::erase_if(d, [](long long x) { return x == 1; });
  std::sort(d.begin(), d.end());
  return d;
}

/// Relation matrix (relators x generators) of the abelianization.
std::vector<std::vector<long long>> relation_matrix(const Presentation& p) {
  std::vector<std::vector<long long>> m;
  for (const Word& r : p.relators) {
    std::vector<long long> row(p.num_generators(), 0);
    for (const Letter& l : r) row[static_cast<std::size_t>(l.gen)] += l.exp;
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("core_chain examples") {
  const auto& f2 = catalog_entry("free_2").presentation;
  Chain c = core_chain(f2, {2});
  REQUIRE(c.levels.size() == 1);
  CHECK(c.levels[0].index == 4);
  CHECK(c.levels[0].quotient().order() == 4);

  const auto& z = catalog_entry("free_1").presentation;
  Chain cz = core_chain(z, {2, 3});
  REQUIRE(cz.levels.size() == 2);
  CHECK(cz.levels[0].index == 2);
  CHECK(cz.levels[1].index == 6);
  check_nesting(cz);

  // Z/2 has no subgroups of index 3 or 4 beyond those of index 2, so the
  // second level does not deepen and is dropped.
  Chain flat = core_chain(make_presentation({"a"}, {"a^2"}), {2, 4});
  CHECK(flat.levels.size() == 1);
  CHECK_FALSE(flat.notes.empty());

  Chain trivial = core_chain(make_presentation({}, {}), {3});
  REQUIRE(trivial.levels.size() == 1);
  CHECK(trivial.levels[0].index == 1);

  CHECK_THROWS_AS(core_chain(f2, {6}, 100), ResourceExhausted);
}

TEST_CASE("abelian_invariants agree with the Smith oracle") {
  std::vector<Presentation> groups{
      make_presentation({"a"}, {"a^2"}),
      make_presentation({"a", "b"}, {"a^4 b^6", "a^6 b^4"}),
      make_presentation({"a", "b", "c"}, {"a^2 b^4 c^6", "a^6 c^10", "a b a^-1 b^-1"}),
      catalog_entry("surface_2").presentation,
      catalog_entry("f2xf2").presentation,
  };
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> gen(0, 2), exp(-4, 4);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> rels;
    for (int r = 0; r < 3; ++r) {
      std::string w;
      for (int k = 0; k < 4; ++k) {
        const int e = exp(rng);
        if (e == 0) continue;
        w += std::string(1, static_cast<char>('a' + gen(rng))) + "^" + std::to_string(e) + " ";
      }
      if (!w.empty()) rels.push_back(w);
    }
    groups.push_back(make_presentation({"a", "b", "c"}, rels));
  }
  for (const auto& p : groups) {
    auto inv = abelian_invariants(p);
    CHECK(inv.divisors.size() == p.num_generators());
    auto oracle_diag = oracle::smith_diagonal(relation_matrix(p));
    const std::size_t free_rank = p.num_generators() - oracle_diag.size();
    CHECK(std::count(inv.divisors.begin(), inv.divisors.end(), 0) == static_cast<long>(free_rank));
    std::vector<long long> torsion;
    for (long long d : inv.divisors) {
      if (d != 0) torsion.push_back(d);
    }
    CHECK(nontrivial_sorted(torsion) == nontrivial_sorted(oracle_diag));
    // Divisibility chain among the torsion factors.
    for (std::size_t i = 1; i < torsion.size(); ++i) CHECK(torsion[i] % torsion[i - 1] == 0);
  }
}

TEST_CASE("homology_cover_chain examples") {
  Chain f2 = homology_cover_chain(catalog_entry("free_2").presentation, {2, 4});
  REQUIRE(f2.levels.size() == 2);
  CHECK(f2.levels[0].index == 4);
  CHECK(f2.levels[1].index == 16);

  Chain s2 = homology_cover_chain(catalog_entry("surface_2").presentation, {2});
  CHECK(s2.levels[0].index == 16);

  Chain tor = homology_cover_chain(make_presentation({"a"}, {"a^2"}), {2, 4});
  CHECK(tor.levels.front().index == 2);
  CHECK(tor.levels.size() == 1);
  CHECK_FALSE(tor.notes.empty());

  CHECK_THROWS_AS(homology_cover_chain(catalog_entry("free_1").presentation, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(homology_cover_chain(catalog_entry("free_1").presentation, {1}), std::invalid_argument);
}

TEST_CASE("product_chain and the product property") {
  const auto& f2 = catalog_entry("free_2").presentation;
  Chain a = homology_cover_chain(f2, {2, 4});
  Chain p = product_chain({a, a});
  REQUIRE(p.levels.size() == 2);
  CHECK(p.levels[0].index == 16);
  CHECK(p.levels[1].index == 256);
  CHECK(p.group.num_generators() == 4);
  CHECK(p.group.aspherical);
  check_nesting(p);
  check_product_property(p, {2, 2});

  // F2 onto S3; splitting after the first generator separates a from b,
  // which do not commute in the quotient.
  Chain s3;
  s3.group = f2;
  s3.levels = {ChainLevel{3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})}, 6, "S3"}};
  Chain ps = product_chain({s3, s3});
  CHECK(ps.levels[0].index == 36);
  check_product_property(ps, {2, 2});
  CHECK_THROWS_AS(check_product_property(ps, {1, 3}), InvariantViolation);

  Chain core = core_chain(f2, {2});
  Chain pc = product_chain({core, core, core});
  CHECK(pc.levels[0].index == 64);
  CHECK_FALSE(pc.group.aspherical);
  CHECK(product_chain({a}).levels.size() == a.levels.size());
}

TEST_CASE("fiber_restrict") {
  const auto& f2 = catalog_entry("free_2").presentation;
  Chain amb = product_chain({homology_cover_chain(f2, {2}), homology_cover_chain(f2, {2})});
  // Diagonal copy of F2 in F2 x F2.
  const Word ac{{0, 1}, {2, 1}}, bd{{1, 1}, {3, 1}};
  auto diag = fiber_restrict(amb, {ac, bd});
  CHECK(diag.levels[0].index == 4);
  CHECK(diag.group.generator_names == std::vector<std::string>{"h1", "h2"});

  std::vector<Word> all;
  for (int g = 0; g < 4; ++g) all.push_back({{g, 1}});
  CHECK(fiber_restrict(amb, all).levels[0].index == 16);

  // Index-2 subgroup of the ambient: words mapping into an index-2 subgroup
  // of the level-0 quotient halve its size.
  auto half = fiber_restrict(amb, {Word{{0, 1}, {1, 1}}, Word{{0, 2}}, Word{{2, 1}}, Word{{3, 1}}});
  CHECK(half.levels[0].index == 8);
}

TEST_CASE("check_nesting rejects non-nested levels") {
  Chain c;
  c.group = catalog_entry("free_1").presentation;
  ChainLevel l2{2, {Perm::from_cycles(2, {{0, 1}})}, 2, "mod 2"};
  ChainLevel l3{3, {Perm::from_cycles(3, {{0, 1, 2}})}, 3, "mod 3"};
  c.levels = {l2, l3};
  CHECK_THROWS_AS(check_nesting(c), InvariantViolation);
  c.levels = {l2, l2};
  CHECK_THROWS_AS(check_nesting(c), InvariantViolation);
  ChainLevel l4{4, {Perm::from_cycles(4, {{0, 1, 2, 3}})}, 4, "mod 4"};
  c.levels = {l2, l4};
  CHECK_NOTHROW(check_nesting(c));
}

TEST_CASE("power_shadow") {
  Chain c = homology_cover_chain(catalog_entry("free_2").presentation, {4});
  CHECK(power_shadow(c.levels[0], 2).order() == 4);
  CHECK(power_shadow(c.levels[0], 4).order() == 1);
  CHECK(power_shadow(c.levels[0], 1).order() == 16);
}
