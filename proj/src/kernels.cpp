#include "gradlab/kernels.hpp"

#include <utility>

#include <omp.h>

namespace gradlab::kernels {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

namespace {

std::size_t find_pivot_mod_p(const DenseModP& m, std::size_t from, std::size_t col) {
  for (std::size_t r = from; r < m.rows; ++r) {
    if (m.at(r, col) != 0) return r;
  }
  return m.rows;
}

std::size_t find_pivot_z(const DenseZ& m, std::size_t from, std::size_t col) {
  for (std::size_t r = from; r < m.rows; ++r) {
    if (sgn(m.at(r, col)) != 0) return r;
  }
  return m.rows;
}

void swap_rows_mod_p(DenseModP& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_rows_z(DenseZ& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols; ++c) swap(m.at(a, c), m.at(b, c));
}

void scale_pivot_row(DenseModP& m, std::size_t r, std::size_t col, std::uint32_t p) {
  const std::uint64_t inv = inverse_mod(m.at(r, col), p);
  for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) = static_cast<std::uint32_t>(m.at(r, c) * inv % p);
}

inline void eliminate_row_mod_p(DenseModP& m, std::size_t i, std::size_t piv, std::size_t col, std::uint32_t p) {
  const std::uint64_t f = m.at(i, col);
  if (f == 0) return;
  for (std::size_t c = col; c < m.cols; ++c) {
    const std::uint64_t sub = f * m.at(piv, c) % p;
    m.at(i, c) = static_cast<std::uint32_t>((m.at(i, c) + p - sub) % p);
  }
}

inline void bareiss_row(DenseZ& m, std::size_t i, std::size_t piv, std::size_t col, const mpz_class& prev,
                        mpz_class& tmp) {
  const mpz_class& a = m.at(piv, col);
  const mpz_class f = m.at(i, col);
  for (std::size_t c = col + 1; c < m.cols; ++c) {
    mpz_class& x = m.at(i, c);
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), a.get_mpz_t());
    mpz_mul(tmp.get_mpz_t(), f.get_mpz_t(), m.at(piv, c).get_mpz_t());
    mpz_sub(x.get_mpz_t(), x.get_mpz_t(), tmp.get_mpz_t());
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
  }
  m.at(i, col) = 0;
}

}  // namespace

namespace serial {

std::size_t rank_mod_p(DenseModP& m, std::uint32_t p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    const std::size_t r = find_pivot_mod_p(m, rank, col);
    if (r == m.rows) continue;
    swap_rows_mod_p(m, r, rank);
    scale_pivot_row(m, rank, col, p);
    for (std::size_t i = rank + 1; i < m.rows; ++i) eliminate_row_mod_p(m, i, rank, col, p);
    ++rank;
  }
  return rank;
}

std::size_t rank_bareiss(DenseZ& m) {
  std::size_t rank = 0;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    const std::size_t r = find_pivot_z(m, rank, col);
    if (r == m.rows) continue;
    swap_rows_z(m, r, rank);
    for (std::size_t i = rank + 1; i < m.rows; ++i) bareiss_row(m, i, rank, col, prev, tmp);
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace serial

namespace omp {

std::size_t rank_mod_p(DenseModP& m, std::uint32_t p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    const std::size_t r = find_pivot_mod_p(m, rank, col);
    if (r == m.rows) continue;
    swap_rows_mod_p(m, r, rank);
    scale_pivot_row(m, rank, col, p);
    const long long first = static_cast<long long>(rank) + 1;
    const long long last = static_cast<long long>(m.rows);
#pragma omp parallel for schedule(static)
    for (long long i = first; i < last; ++i) eliminate_row_mod_p(m, static_cast<std::size_t>(i), rank, col, p);
    ++rank;
  }
  return rank;
}

std::size_t rank_bareiss(DenseZ& m) {
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    const std::size_t r = find_pivot_z(m, rank, col);
    if (r == m.rows) continue;
    swap_rows_z(m, r, rank);
    const long long first = static_cast<long long>(rank) + 1;
    const long long last = static_cast<long long>(m.rows);
#pragma omp parallel
    {
      mpz_class tmp;
#pragma omp for schedule(dynamic, 8)
      for (long long i = first; i < last; ++i) bareiss_row(m, static_cast<std::size_t>(i), rank, col, prev, tmp);
    }
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace omp

}  // namespace gradlab::kernels
