#include <filesystem>

#include "doctest.h"
#include "gradlab/cosets.hpp"
#include "gradlab/error.hpp"
#include "gradlab/homology.hpp"
#include "oracles.hpp"

using namespace gradlab;

namespace {

Presentation a4() { return make_presentation({"a", "b"}, {"a^2", "b^3", "a b a b a b"}); }
Presentation free2() { return make_presentation({"a", "b"}, {}); }
Presentation genus2() {
  return make_presentation({"a1", "b1", "a2", "b2"}, {"a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"}, true);
}
Word w(const Presentation& p, const char* text) { return parse_word(text, p.generator_names); }

}  // namespace

TEST_CASE("todd_coxeter on the (2,3,3) triangle group") {
  Presentation p = a4();
  // Oracle: a = (0 1)(2 3), b = (0 1 2) satisfy the relators; their closure has 12 elements.
  const oracle::Images a{1, 0, 3, 2}, b{1, 2, 0, 3};
  CHECK(oracle::mul(a, a) == oracle::Images{0, 1, 2, 3});
  auto ab = oracle::mul(a, b);
  CHECK(oracle::mul(oracle::mul(ab, ab), ab) == oracle::Images{0, 1, 2, 3});
  CHECK(oracle::closure_order({a, b}, 4) == 12);

  CosetTable t = todd_coxeter(p, {}, 1000);
  CHECK(t.num_cosets() == 12);
  CHECK(perm_rep(t).group.order() == 12);
  CHECK(todd_coxeter(p, {w(p, "a")}, 1000).num_cosets() == 6);
  CHECK(todd_coxeter(p, {w(p, "a"), w(p, "b")}, 1000).num_cosets() == 1);
  CHECK(todd_coxeter(free2(), {w(free2(), "a"), w(free2(), "b")}, 10).num_cosets() == 1);
}

TEST_CASE("todd_coxeter on dihedral groups matches 2n and is reproducible") {
  for (int n = 2; n <= 12; ++n) {
    Presentation p = make_presentation({"r", "s"}, {"r^" + std::to_string(n), "s^2", "r s r s"});
    CosetTable t = todd_coxeter(p, {}, 5000);
    CHECK(t.num_cosets() == static_cast<std::size_t>(2 * n));
    CHECK(todd_coxeter(p, {}, 5000).table == t.table);
    CHECK(todd_coxeter(p, {w(p, "s")}, 5000).num_cosets() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("todd_coxeter bounds and errors") {
  CHECK_THROWS_AS(todd_coxeter(free2(), {}, 50), ResourceExhausted);
  CHECK_THROWS_AS(todd_coxeter(a4(), {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(todd_coxeter(a4(), {}, 5), ResourceExhausted);
}

TEST_CASE("low_index_subgroups on small groups") {
  auto idx2 = low_index_subgroups(free2(), 2);
  CHECK(idx2.size() == 4);
  CHECK(idx2[0].num_cosets() == 1);
  std::size_t index2_total = 0;
  for (const auto& t : idx2) {
    if (t.num_cosets() == 2) index2_total += conjugacy_class_size(t);
  }
  CHECK(index2_total == oracle::free2_subgroups_of_index(2));
  CHECK(index2_total == 3);

  auto idx3 = low_index_subgroups(free2(), 3);
  std::size_t index3_total = 0;
  for (const auto& t : idx3) {
    if (t.num_cosets() == 3) index3_total += conjugacy_class_size(t);
    CHECK(standardize(t.table, 0) == t.table);
  }
  CHECK(oracle::free2_subgroups_of_index(3) == 13);
  CHECK(index3_total == 13);

  auto z2 = low_index_subgroups(make_presentation({"a"}, {"a^2"}), 2);
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].num_cosets() == 1);
  CHECK(z2[1].num_cosets() == 2);

  LowIndexOptions tiny;
  tiny.max_index = 4;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(low_index_subgroups(free2(), tiny), ResourceExhausted);
}

TEST_CASE("low-index output is deterministic and every table satisfies its subgroup words") {
  Presentation p = a4();
  auto first = low_index_subgroups(p, 6);
  auto second = low_index_subgroups(p, 6);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].table == second[i].table);
    CHECK_NOTHROW(verify_table(first[i]));
  }
  // A4: one subgroup each of index 1 and 3, four of index 4, three of index 6.
  std::map<std::size_t, std::size_t> by_index;
  for (const auto& t : first) by_index[t.num_cosets()] += conjugacy_class_size(t);
  CHECK(by_index[1] == 1);
  CHECK(by_index[3] == 1);
  CHECK(by_index[4] == 4);
  CHECK(by_index[6] == 3);
}

TEST_CASE("perm_rep and normal_core_table") {
  Presentation f = free2();
  CosetTable trivial = todd_coxeter(f, {w(f, "a"), w(f, "b")}, 10);
  PermRep one = perm_rep(trivial);
  CHECK(one.group.degree() == 1);
  CHECK(one.group.order() == 1);
  CHECK(normal_core_table(trivial).num_cosets() == 1);

  // Kernel of a, b -> 1 mod 2.
  CosetTable parity = todd_coxeter(f, {w(f, "a^2"), w(f, "a b"), w(f, "b a")}, 100);
  REQUIRE(parity.num_cosets() == 2);
  PermRep rep = perm_rep(parity);
  CHECK(rep.generator_images[0] == Perm::from_cycles(2, {{0, 1}}));
  CHECK(rep.generator_images[1] == Perm::from_cycles(2, {{0, 1}}));
  CHECK(rep.group.order() == 2);
  CHECK(normal_core_table(parity).num_cosets() == 2);

  std::size_t non_normal_seen = 0;
  for (const auto& t : low_index_subgroups(f, 3)) {
    if (t.num_cosets() != 3) continue;
    CosetTable core = normal_core_table(t);
    CHECK(perm_rep(core).group.order() == core.num_cosets());  // regular action
    if (conjugacy_class_size(t) == 3) {
      CHECK(core.num_cosets() == 6);
      ++non_normal_seen;
    } else {
      CHECK(core.num_cosets() == 3);
    }
  }
  CHECK(non_normal_seen == 3);
}

TEST_CASE("regular_table rejects images that break relators") {
  Presentation p = make_presentation({"a"}, {"a^2"});
  std::vector<Perm> bad{Perm::from_cycles(3, {{0, 1, 2}})};
  CHECK_THROWS_AS(regular_table(p, bad), std::invalid_argument);
  std::vector<Perm> good{Perm::from_cycles(2, {{0, 1}})};
  CHECK(regular_table(p, good).num_cosets() == 2);
}

TEST_CASE("reidemeister_schreier counts") {
  Presentation f = free2();
  for (const auto& t : low_index_subgroups(f, 3)) {
    auto rs = reidemeister_schreier(t);
    const std::size_t k = t.num_cosets();
    CHECK(rs.presentation.num_generators() == k * (2 - 1) + 1);
    CHECK(rs.presentation.num_relators() == 0);
  }
  Presentation g = genus2();
  // Index-2 subgroup: kernel of a1 -> 1 mod 2, everything else -> 0.
  CosetTable t = todd_coxeter(g, {w(g, "a1^2"), w(g, "b1"), w(g, "a2"), w(g, "b2"), w(g, "a1 b1 a1^-1"),
                                  w(g, "a1 a2 a1^-1"), w(g, "a1 b2 a1^-1")},
                              1000);
  REQUIRE(t.num_cosets() == 2);
  auto rs = reidemeister_schreier(t);
  CHECK(rs.presentation.num_generators() == 7);
  CHECK(rs.presentation.num_relators() == 2);
  CHECK(rs.generator_words.size() == 7);
  for (const Word& gw : rs.generator_words) CHECK(t.trace(0, gw) == 0);

  CosetTable whole = todd_coxeter(g, {w(g, "a1"), w(g, "b1"), w(g, "a2"), w(g, "b2")}, 10);
  auto rs1 = reidemeister_schreier(whole);
  CHECK(rs1.presentation.num_generators() == 4);
  CHECK(rs1.presentation.num_relators() == 1);
}

TEST_CASE("RS Euler count and H1 cross-validation against the covering complex") {
  std::vector<Presentation> groups{free2(), genus2(), a4(),
                                   make_presentation({"a", "b"}, {"a b a^-1 b^-1"}, true)};
  for (const Presentation& p : groups) {
    for (const auto& t : low_index_subgroups(p, 4)) {
      auto rs = reidemeister_schreier(t).presentation;
      const long long k = static_cast<long long>(t.num_cosets());
      const long long lhs = 1 - static_cast<long long>(rs.num_generators()) + static_cast<long long>(rs.num_relators());
      const long long rhs = k * (1 - static_cast<long long>(p.num_generators()) + static_cast<long long>(p.num_relators()));
      CHECK(lhs == rhs);
      const auto b = betti(covering_complex(t), FieldSpec::rationals());
      CHECK(abelianization_rank(rs) == b[1]);
    }
  }
}

TEST_CASE("coset table JSON round trip and cache") {
  Presentation p = a4();
  CosetTable t = todd_coxeter(p, {w(p, "a")}, 100);
  auto j = to_json(t);
  CHECK(j["table"].size() == 6);
  CosetTable back = table_from_json(j, p, t.subgroup_words);
  CHECK(back.table == t.table);
  auto broken = j;
  broken["table"][0][0] = 5;
  CHECK_THROWS(table_from_json(broken, p, t.subgroup_words));

  CHECK(table_cache_key(p, {}) != table_cache_key(p, {w(p, "a")}));
  CHECK(table_cache_key(p, {}) == table_cache_key(a4(), {}));

  auto dir = std::filesystem::temp_directory_path() / "gradlab_cache_test";
  std::filesystem::remove_all(dir);
  TableCache cache(dir);
  CHECK_FALSE(cache.load(p, {}).has_value());
  CosetTable first = todd_coxeter_cached(p, {}, 100, &cache);
  auto hit = cache.load(p, {});
  REQUIRE(hit.has_value());
  CHECK(hit->table == first.table);
  std::filesystem::remove_all(dir);
}
