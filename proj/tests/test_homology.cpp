#include <random>

#include "doctest.h"
#include "gradlab/error.hpp"
#include "gradlab/homology.hpp"
#include "oracles.hpp"

using namespace gradlab;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);

Word w(const Presentation& p, const char* text) { return parse_word(text, p.generator_names); }

CosetTable whole_group(const Presentation& p) {
  std::vector<Word> gens;
  for (std::size_t g = 0; g < p.num_generators(); ++g) gens.push_back({{static_cast<int>(g), 1}});
  return todd_coxeter(p, gens, 10);
}

/// Kernel of the map sending every generator to the given residues mod m.
CosetTable cyclic_cover(const Presentation& p, const std::vector<int>& residues, int m) {
  std::vector<Perm> images;
  for (int r : residues) {
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = (i + r) % m;
    images.emplace_back(img);
  }
  return regular_table(p, images);
}

/// Brute-force b_i over GF(p) or Q via dense oracle ranks.
std::vector<std::size_t> oracle_betti(const ChainComplex& c, long long p) {
  std::vector<std::size_t> ranks;
  for (const Matrix& m : c.boundaries()) {
    ranks.push_back(oracle::rank_mod(m.to_dense(), p));
  }
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < c.dims().size(); ++i) {
    b.push_back(c.dims()[i] - (i ? ranks[i - 1] : 0) - (i < ranks.size() ? ranks[i] : 0));
  }
  return b;
}

}  // namespace

TEST_CASE("FieldSpec parsing and validation") {
  CHECK(FieldSpec::parse("q").is_rational());
  CHECK(FieldSpec::parse("gf:7").characteristic() == 7);
  CHECK(FieldSpec::parse("gf:2147483647").characteristic() == 2147483647);
  CHECK_THROWS_AS(FieldSpec::parse("gf:4"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("gf:2147483659"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("gf:x"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("r"), std::invalid_argument);
  CHECK(FieldSpec::prime(3).name() == "gf:3");
}

TEST_CASE("chain complex construction checks shapes and boundary of boundary") {
  Matrix d1 = Matrix::from_dense({{1, -1}});
  CHECK_THROWS_AS(ChainComplex({2, 2}, {d1}), InvariantViolation);
  Matrix e1 = Matrix::from_dense({{-1, 1}, {1, -1}});  // two vertices, two edges
  Matrix e2 = Matrix::from_dense({{1}, {0}});           // face on edge 0 only
  CHECK_THROWS_AS(ChainComplex({2, 2, 1}, {e1, e2}), InvariantViolation);
}

TEST_CASE("covering_complex examples") {
  auto f2 = make_presentation({"a", "b"}, {}, true);
  auto c = covering_complex(whole_group(f2));
  CHECK(c.dims() == std::vector<std::size_t>{1, 2, 0});
  CHECK(betti(c, Q) == std::vector<std::size_t>{1, 2, 0});

  auto torus = make_presentation({"a", "b"}, {"a b a^-1 b^-1"}, true);
  std::vector<Perm> klein{Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})};
  auto t4 = regular_table(torus, klein);
  REQUIRE(t4.num_cosets() == 4);
  auto ct = covering_complex(t4);
  CHECK(ct.euler_characteristic() == 0);
  CHECK(betti(ct, Q) == std::vector<std::size_t>{1, 2, 1});

  auto z2 = make_presentation({"a"}, {"a^2"});
  auto cz = covering_complex(whole_group(z2));
  CHECK(betti(cz, Q) == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti(cz, GF2) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("betti examples") {
  auto f2 = make_presentation({"a", "b"}, {}, true);
  auto c3 = covering_complex(cyclic_cover(f2, {1, 0}, 3));
  CHECK(betti(c3, Q) == std::vector<std::size_t>{1, 4, 0});

  auto g2 = make_presentation({"a1", "b1", "a2", "b2"}, {"a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"}, true);
  std::vector<Perm> mod2;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> img(16);
    for (int x = 0; x < 16; ++x) img[static_cast<std::size_t>(x)] = x ^ (1 << i);
    mod2.emplace_back(img);
  }
  auto cg = covering_complex(regular_table(g2, mod2));
  CHECK(cg.dims() == std::vector<std::size_t>{16, 64, 16});
  CHECK(betti(cg, Q) == std::vector<std::size_t>{1, 34, 1});
  CHECK(betti(cg, GF2) == std::vector<std::size_t>{1, 34, 1});

  auto f2xf2 = make_presentation({"a", "b", "c", "d"},
                                 {"a c a^-1 c^-1", "a d a^-1 d^-1", "b c b^-1 c^-1", "b d b^-1 d^-1"}, true);
  auto cp = covering_complex(whole_group(f2xf2));
  CHECK(betti(cp, Q) == std::vector<std::size_t>{1, 4, 4});
  CHECK(kunneth_product_dims({2, 2}, 2) == 4);
}

TEST_CASE("betti over several fields agrees with per-field calls and the dense oracle") {
  auto z3 = make_presentation({"a", "b"}, {"a^3", "b^2", "a b a^-1 b^-1"});
  auto cover = cyclic_cover(z3, {1, 0}, 3);
  auto c = covering_complex(cover);
  const std::vector<FieldSpec> fields{Q, GF2, GF3};
  auto all = betti(c, fields);
  for (std::size_t f = 0; f < fields.size(); ++f) CHECK(all[f] == betti(c, fields[f]));
  CHECK(betti(c, GF2) == oracle_betti(c, 2));
  CHECK(betti(c, GF3) == oracle_betti(c, 3));
  CHECK(betti(c, Q) == oracle_betti(c, 1000000007LL));
}

TEST_CASE("covering complex invariants over random cyclic covers") {
  std::vector<Presentation> groups{
      make_presentation({"a", "b"}, {}, true),
      make_presentation({"a", "b"}, {"a b a^-1 b^-1"}, true),
      make_presentation({"a1", "b1", "a2", "b2"}, {"a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"}, true),
      make_presentation({"a", "b"}, {"a^4", "b^2", "a b a b"}),
      make_presentation({"a", "b", "c", "d"}, {"a c a^-1 c^-1", "a d a^-1 d^-1", "b c b^-1 c^-1", "b d b^-1 d^-1"},
                        true)};
  std::mt19937 rng(3);
  for (const Presentation& p : groups) {
    const long long chi = 1 - static_cast<long long>(p.num_generators()) + static_cast<long long>(p.num_relators());
    for (int m : {2, 3, 4, 6}) {
      std::vector<int> residues;
      for (std::size_t g = 0; g < p.num_generators(); ++g) residues.push_back(static_cast<int>(rng() % m));
      residues[0] = 1;
      std::vector<Perm> images;
      for (int r : residues) {
        std::vector<int> img(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = (i + r) % m;
        images.emplace_back(img);
      }
      bool consistent = true;
      for (const Word& r : p.relators) consistent = consistent && evaluate(r, images, static_cast<std::size_t>(m)).is_identity();
      if (!consistent) continue;
      auto t = regular_table(p, images);
      auto c = covering_complex(t);
      const auto bq = betti(c, Q);
      CHECK(bq[0] == 1);
      for (auto f : {GF2, GF3}) {
        const auto bp = betti(c, f);
        CHECK(bp[0] == 1);
        for (std::size_t i = 0; i < bp.size(); ++i) CHECK(bp[i] >= bq[i]);
        long long alt = 0;
        for (std::size_t i = 0; i < bp.size(); ++i) alt += (i % 2 ? -1 : 1) * static_cast<long long>(bp[i]);
        CHECK(alt == c.euler_characteristic());
      }
      if (p.aspherical) {
        long long alt = 0;
        for (std::size_t i = 0; i < bq.size(); ++i) alt += (i % 2 ? -1 : 1) * static_cast<long long>(bq[i]);
        CHECK(alt == static_cast<long long>(t.num_cosets()) * chi);
      }
    }
  }
}

TEST_CASE("kunneth_product_dims against subset enumeration and generating function") {
  CHECK(kunneth_product_dims({3, 5}, 2) == 15);
  CHECK(kunneth_product_dims({2, 2}, 1) == 4);
  CHECK(oracle::subset_product_sum({2, 3, 4}, 2) == 26);
  CHECK(kunneth_product_dims({2, 3, 4}, 2) == 26);
  CHECK(kunneth_product_dims({2, 3}, 0) == 1);
  CHECK(kunneth_product_dims({2, 3}, 3) == 0);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint64_t> dims;
    for (std::size_t i = 0; i < 1 + rng() % 6; ++i) dims.push_back(rng() % 7);
    // Product of (1 + d x) by repeated convolution gives the coefficient list.
    std::vector<std::vector<std::uint64_t>> factors;
    for (auto d : dims) factors.push_back({1, d});
    const auto coeffs = kunneth_betti(factors);
    for (std::size_t q = 0; q <= dims.size(); ++q) {
      CHECK(kunneth_product_dims(dims, q) == oracle::subset_product_sum(dims, q));
      CHECK(kunneth_product_dims(dims, q) == coeffs[q]);
    }
  }
  // Surface x circle: (1,4,1) * (1,1) = (1,5,5,1).
  CHECK(kunneth_betti({{1, 4, 1}, {1, 1}}) == std::vector<std::uint64_t>{1, 5, 5, 1});
}

TEST_CASE("nilpotent_betti_bound is binomial(h, q)") {
  CHECK(nilpotent_betti_bound(0, 5) == 1);
  CHECK(nilpotent_betti_bound(0, 0) == 1);
  CHECK(nilpotent_betti_bound(2, 4) == 6);
  CHECK(nilpotent_betti_bound(3, 2) == 0);
  // x(x-1)...(x-q+1)/q! evaluated directly.
  for (std::size_t h = 0; h < 12; ++h) {
    for (std::size_t q = 0; q <= h + 1; ++q) {
      std::uint64_t num = 1, den = 1;
      for (std::size_t i = 0; i < q; ++i) {
        num *= (h >= i ? h - i : 0);
        den *= i + 1;
      }
      CHECK(nilpotent_betti_bound(q, h) == num / den);
    }
  }
}

TEST_CASE("abelianization rank") {
  CHECK(abelianization_rank(make_presentation({"a", "b"}, {})) == 2);
  CHECK(abelianization_rank(make_presentation({"a", "b"}, {"a b a^-1 b^-1"})) == 2);
  CHECK(abelianization_rank(make_presentation({"a"}, {"a^2"})) == 0);
  CHECK(abelianization_rank(make_presentation({"a", "b", "c", "d"}, {"a b c^-1 d^-1"})) == 3);
}
