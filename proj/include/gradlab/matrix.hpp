#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gradlab {

/// Coefficient field: the rationals, or GF(p) for a prime p < 2^31.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static FieldSpec prime(std::int64_t p);
  /// Parses "q" or "gf:<p>".
  static FieldSpec parse(const std::string& text);

  bool is_rational() const { return p_ == 0; }
  std::int64_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Sparse integer matrix in row-compressed form. Rows hold (column, value)
/// pairs sorted by column with no zero values.
class Matrix {
 public:
  using Entry = std::pair<std::size_t, std::int64_t>;
  using Row = std::vector<Entry>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  /// Sums duplicate (row, col) contributions and drops zeros.
  static Matrix from_triplets(std::size_t rows, std::size_t cols,
                              const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& triplets);
  static Matrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  const Row& row(std::size_t r) const { return data_[r]; }
  std::int64_t at(std::size_t r, std::size_t c) const;

  std::vector<std::vector<std::int64_t>> to_dense() const;
  Matrix transpose() const;
  bool is_zero() const { return nonzeros() == 0; }

  friend Matrix multiply(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

/// Exact rank over the given field. Sparse elimination with pivot row of
/// fewest nonzeros (lowest index on ties) and its first nonzero as pivot;
/// switches to dense kernels once fill-in passes `dense_threshold` of the
/// remaining block.
std::size_t rank(const Matrix& m, const FieldSpec& field, double dense_threshold = 0.30);

}  // namespace gradlab
