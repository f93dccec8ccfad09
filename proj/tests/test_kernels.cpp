#include <random>

#include "doctest.h"
#include "gradlab/kernels.hpp"
#include "gradlab/matrix.hpp"
#include "oracles.hpp"

using namespace gradlab;

namespace {

std::vector<std::vector<long long>> random_dense(std::mt19937& rng, std::size_t rows, std::size_t cols,
                                                 double density, int range) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-range, range);
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols, 0));
  for (auto& row : m) {
    for (auto& x : row) {
      if (u(rng) < density) x = v(rng);
    }
  }
  // Plant dependent rows so ranks are not always full.
  if (rows >= 3) {
    for (std::size_t c = 0; c < cols; ++c) m[rows - 1][c] = 2 * m[0][c] - 3 * m[1][c];
  }
  return m;
}

kernels::DenseModP to_mod_p(const std::vector<std::vector<long long>>& d, std::uint32_t p) {
  kernels::DenseModP m{d.size(), d.empty() ? 0 : d[0].size(), {}};
  for (const auto& row : d) {
    for (long long x : row) m.data.push_back(static_cast<std::uint32_t>(((x % p) + p) % p));
  }
  return m;
}

kernels::DenseZ to_z(const std::vector<std::vector<long long>>& d) {
  kernels::DenseZ m{d.size(), d.empty() ? 0 : d[0].size(), {}};
  for (const auto& row : d) {
    for (long long x : row) m.data.emplace_back(static_cast<long>(x));
  }
  return m;
}

Matrix to_matrix(const std::vector<std::vector<long long>>& d) {
  std::vector<std::vector<std::int64_t>> c;
  for (const auto& row : d) c.emplace_back(row.begin(), row.end());
  return Matrix::from_dense(c);
}

}  // namespace

TEST_CASE("modular inverse") {
  for (std::uint32_t p : {2u, 3u, 7u, 65537u, 2147483647u}) {
    for (std::uint32_t a = 1; a < std::min<std::uint32_t>(p, 50); ++a) {
      CHECK(static_cast<std::uint64_t>(a) * kernels::inverse_mod(a, p) % p == 1);
    }
  }
}

TEST_CASE("serial and OpenMP kernels agree with the oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 14;
    const std::size_t cols = 1 + rng() % 14;
    auto d = random_dense(rng, rows, cols, 0.5, 4);
    for (std::uint32_t p : {2u, 3u, 101u}) {
      const std::size_t expected = oracle::rank_mod(d, p);
      auto a = to_mod_p(d, p);
      auto b = to_mod_p(d, p);
      CHECK(kernels::serial::rank_mod_p(a, p) == expected);
      CHECK(kernels::omp::rank_mod_p(b, p) == expected);
    }
    // Rank over Q equals rank mod a prime far above any minor here.
    const std::size_t q_expected = oracle::rank_mod(d, 1000000007LL);
    auto z1 = to_z(d);
    auto z2 = to_z(d);
    CHECK(kernels::serial::rank_bareiss(z1) == q_expected);
    CHECK(kernels::omp::rank_bareiss(z2) == q_expected);
  }
}

TEST_CASE("sparse rank agrees with dense kernels across fill thresholds") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 25;
    const std::size_t cols = 1 + rng() % 25;
    auto d = random_dense(rng, rows, cols, 0.15, 3);
    Matrix m = to_matrix(d);
    for (double threshold : {0.0, 0.3, 2.0}) {
      for (std::int64_t p : {2, 3, 5}) {
        CHECK(rank(m, FieldSpec::prime(p), threshold) == oracle::rank_mod(d, p));
      }
      auto z = to_z(d);
      CHECK(rank(m, FieldSpec::rationals(), threshold) == kernels::serial::rank_bareiss(z));
    }
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix(3, 4), FieldSpec::rationals()) == 0);
  CHECK(rank(Matrix(0, 0), FieldSpec::prime(2)) == 0);
  Matrix id = Matrix::from_dense({{1, 0}, {0, 1}});
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)}) CHECK(rank(id, f) == 2);
  Matrix two = Matrix::from_dense({{2}});
  CHECK(rank(two, FieldSpec::prime(2)) == 0);
  CHECK(rank(two, FieldSpec::rationals()) == 1);
  // Large entries exercise multi-precision growth.
  Matrix big = Matrix::from_dense({{4000000000LL, 3}, {8000000000LL, 6}});
  CHECK(rank(big, FieldSpec::rationals()) == 1);
}
