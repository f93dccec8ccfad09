#include "gradlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include <gmpxx.h>

#include "gradlab/kernels.hpp"

namespace gradlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
  return FieldSpec(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("gf:", 0) == 0) {
    std::size_t used = 0;
    long long p = 0;
    try {
      p = std::stoll(text.substr(3), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed field spec '" + text + "'");
    }
    if (used != text.size() - 3) throw std::invalid_argument("malformed field spec '" + text + "'");
    return prime(p);
  }
  throw std::invalid_argument("unknown field spec '" + text + "' (expected q or gf:<p>)");
}

std::string FieldSpec::name() const { return is_rational() ? "q" : "gf:" + std::to_string(p_); }

Matrix Matrix::from_triplets(std::size_t rows, std::size_t cols,
                             const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& triplets) {
  std::vector<std::map<std::size_t, std::int64_t>> acc(rows);
  for (const auto& [r, c, v] : triplets) {
    if (r >= rows || c >= cols) throw std::out_of_range("triplet outside matrix shape");
    acc[r][c] += v;
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& [c, v] : acc[r]) {
      if (v != 0) m.data_[r].emplace_back(c, v);
    }
  }
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows ? dense.front().size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (dense[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (dense[r][c] != 0) m.data_[r].emplace_back(c, dense[r][c]);
    }
  }
  return m;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const Row& r : data_) n += r.size();
  return n;
}

std::int64_t Matrix::at(std::size_t r, std::size_t c) const {
  const Row& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
  return it != row.end() && it->first == c ? it->second : 0;
}

std::vector<std::vector<std::int64_t>> Matrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) d[r][c] = v;
  }
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  }
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in multiply");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    std::map<std::size_t, std::int64_t> acc;
    for (const auto& [k, v] : a.data_[r]) {
      for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
    }
    for (const auto& [c, v] : acc) {
      if (v != 0) out.data_[r].emplace_back(c, v);
    }
  }
  return out;
}

namespace {

template <typename T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

template <typename T>
typename SparseRow<T>::const_iterator find_col(const SparseRow<T>& row, std::size_t col) {
  return std::lower_bound(row.begin(), row.end(), col,
                          [](const std::pair<std::size_t, T>& e, std::size_t c) { return e.first < c; });
}

/// Picks the active row with fewest nonzeros, lowest position on ties.
template <typename T>
std::size_t choose_pivot(const std::vector<SparseRow<T>>& active) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < active.size(); ++i) {
    if (active[i].size() < active[best].size()) best = i;
  }
  return best;
}

template <typename T>
void drop_empty(std::vector<SparseRow<T>>& active, std::size_t& nnz) {
  std::erase_if(active, [](const SparseRow<T>& r) { return r.empty(); });
  nnz = 0;
  for (const auto& r : active) nnz += r.size();
}

template <typename T>
bool too_dense(const std::vector<SparseRow<T>>& active, std::size_t nnz, std::size_t cols, double threshold) {
  if (active.empty() || cols == 0) return false;
  return static_cast<double>(nnz) > threshold * static_cast<double>(active.size()) * static_cast<double>(cols);
}

std::size_t rank_mod_p(const Matrix& m, std::uint32_t p, double threshold) {
  std::vector<SparseRow<std::uint32_t>> active;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow<std::uint32_t> row;
    for (const auto& [c, v] : m.row(r)) {
      const std::int64_t red = ((v % static_cast<std::int64_t>(p)) + p) % p;
      if (red != 0) row.emplace_back(c, static_cast<std::uint32_t>(red));
    }
    active.push_back(std::move(row));
  }
  std::size_t nnz = 0;
  drop_empty(active, nnz);
  std::size_t rank = 0;
  while (!active.empty()) {
    if (too_dense(active, nnz, m.cols(), threshold)) {
      kernels::DenseModP d{active.size(), m.cols(), std::vector<std::uint32_t>(active.size() * m.cols(), 0)};
      for (std::size_t i = 0; i < active.size(); ++i) {
        for (const auto& [c, v] : active[i]) d.at(i, c) = v;
      }
      return rank + kernels::omp::rank_mod_p(d, p);
    }
    const std::size_t pi = choose_pivot(active);
    const SparseRow<std::uint32_t> piv = std::move(active[pi]);
    active.erase(active.begin() + static_cast<long>(pi));
    ++rank;
    const std::size_t col = piv.front().first;
    const std::uint64_t inv = kernels::inverse_mod(piv.front().second, p);
    for (auto& row : active) {
      auto it = find_col(row, col);
      if (it == row.end() || it->first != col) continue;
      const std::uint64_t f = it->second * inv % p;
      SparseRow<std::uint32_t> merged;
      merged.reserve(row.size() + piv.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < piv.size()) {
        if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || piv[b].first < row[a].first) {
          merged.emplace_back(piv[b].first, static_cast<std::uint32_t>((p - f * piv[b].second % p) % p));
          ++b;
        } else {
          const std::uint64_t v = (row[a].second + p - f * piv[b].second % p) % p;
          if (v != 0) merged.emplace_back(row[a].first, static_cast<std::uint32_t>(v));
          ++a;
          ++b;
        }
      }
      row = std::move(merged);
    }
    drop_empty(active, nnz);
  }
  return rank;
}

void remove_content(SparseRow<mpz_class>& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

std::size_t rank_rational(const Matrix& m, double threshold) {
  std::vector<SparseRow<mpz_class>> active;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow<mpz_class> row;
    for (const auto& [c, v] : m.row(r)) row.emplace_back(c, mpz_class(static_cast<long>(v)));
    remove_content(row);
    active.push_back(std::move(row));
  }
  std::size_t nnz = 0;
  drop_empty(active, nnz);
  std::size_t rank = 0;
  mpz_class tmp;
  while (!active.empty()) {
    if (too_dense(active, nnz, m.cols(), threshold)) {
      kernels::DenseZ d{active.size(), m.cols(), std::vector<mpz_class>(active.size() * m.cols())};
      for (std::size_t i = 0; i < active.size(); ++i) {
        for (const auto& [c, v] : active[i]) d.at(i, c) = v;
      }
      return rank + kernels::omp::rank_bareiss(d);
    }
    const std::size_t pi = choose_pivot(active);
    const SparseRow<mpz_class> piv = std::move(active[pi]);
    active.erase(active.begin() + static_cast<long>(pi));
    ++rank;
    const std::size_t col = piv.front().first;
    const mpz_class& a = piv.front().second;
    for (auto& row : active) {
      auto it = find_col(row, col);
      if (it == row.end() || it->first != col) continue;
      // row <- a*row - f*piv, with g = gcd(a, f) divided out first.
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), it->second.get_mpz_t());
      const mpz_class ra = a / g;
      const mpz_class rf = it->second / g;
      SparseRow<mpz_class> merged;
      merged.reserve(row.size() + piv.size());
      std::size_t x = 0, y = 0;
      while (x < row.size() || y < piv.size()) {
        if (y == piv.size() || (x < row.size() && row[x].first < piv[y].first)) {
          merged.emplace_back(row[x].first, ra * row[x].second);
          ++x;
        } else if (x == row.size() || piv[y].first < row[x].first) {
          merged.emplace_back(piv[y].first, -rf * piv[y].second);
          ++y;
        } else {
          mpz_mul(tmp.get_mpz_t(), ra.get_mpz_t(), row[x].second.get_mpz_t());
          mpz_submul(tmp.get_mpz_t(), rf.get_mpz_t(), piv[y].second.get_mpz_t());
          if (sgn(tmp) != 0) merged.emplace_back(row[x].first, tmp);
          ++x;
          ++y;
        }
      }
      remove_content(merged);
      row = std::move(merged);
    }
    drop_empty(active, nnz);
  }
  return rank;
}

}  // namespace

std::size_t rank(const Matrix& m, const FieldSpec& field, double dense_threshold) {
  if (field.is_rational()) return rank_rational(m, dense_threshold);
  return rank_mod_p(m, static_cast<std::uint32_t>(field.characteristic()), dense_threshold);
}

}  // namespace gradlab
