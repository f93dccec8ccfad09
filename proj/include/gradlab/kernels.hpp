#pragma once

// Dense elimination kernels. Each kernel has a serial reference and an
// OpenMP version that parallelizes the row updates of every pivot step; the
// two must return identical ranks and are compared in tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace gradlab::kernels {

/// Row-major dense matrix of residues in [0, p).
struct DenseModP {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;
  std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Row-major dense integer matrix.
struct DenseZ {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;
  mpz_class& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

namespace serial {
/// Gaussian elimination over GF(p); destroys the input.
std::size_t rank_mod_p(DenseModP& m, std::uint32_t p);
/// Fraction-free Bareiss elimination over Z (rank over Q); destroys the input.
std::size_t rank_bareiss(DenseZ& m);
}  // namespace serial

namespace omp {
std::size_t rank_mod_p(DenseModP& m, std::uint32_t p);
std::size_t rank_bareiss(DenseZ& m);
}  // namespace omp

}  // namespace gradlab::kernels
