#include "gradlab/homology.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

#include "gradlab/error.hpp"

namespace gradlab {

ChainComplex::ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (dims_.empty()) throw InvariantViolation("chain complex needs at least C_0");
  if (boundaries_.size() != dims_.size() - 1) throw InvariantViolation("one boundary per positive degree");
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    if (boundaries_[i].rows() != dims_[i] || boundaries_[i].cols() != dims_[i + 1]) {
      throw InvariantViolation("boundary " + std::to_string(i + 1) + " has the wrong shape");
    }
  }
  for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i) {
    if (!multiply(boundaries_[i], boundaries_[i + 1]).is_zero()) {
      throw InvariantViolation("boundary of boundary is nonzero in degree " + std::to_string(i + 2));
    }
  }
}

long long ChainComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(dims_[i]);
  }
  return chi;
}

ChainComplex covering_complex(const CosetTable& t) {
  const std::size_t k = t.num_cosets();
  const std::size_t nx = t.presentation.num_generators();
  const std::size_t nr = t.presentation.num_relators();
  auto edge = [nx](std::size_t c, std::size_t g) { return c * nx + g; };

  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> d1;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t g = 0; g < nx; ++g) {
      const auto target = static_cast<std::size_t>(t.table[c][column(static_cast<int>(g), false)]);
      d1.emplace_back(target, edge(c, g), 1);
      d1.emplace_back(c, edge(c, g), -1);
    }
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> d2;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < nr; ++r) {
      const std::size_t face = c * nr + r;
      int d = static_cast<int>(c);
      for (const Letter& l : t.presentation.relators[r]) {
        for (int i = 0; i < std::abs(l.exp); ++i) {
          if (l.exp > 0) {
            d2.emplace_back(edge(static_cast<std::size_t>(d), static_cast<std::size_t>(l.gen)), face, 1);
            d = t.table[static_cast<std::size_t>(d)][column(l.gen, false)];
          } else {
            d = t.table[static_cast<std::size_t>(d)][column(l.gen, true)];
            d2.emplace_back(edge(static_cast<std::size_t>(d), static_cast<std::size_t>(l.gen)), face, -1);
          }
        }
      }
    }
  }
  return ChainComplex({k, k * nx, k * nr},
                      {Matrix::from_triplets(k, k * nx, d1), Matrix::from_triplets(k * nx, k * nr, d2)});
}

namespace {

std::vector<std::size_t> boundary_ranks(const ChainComplex& c, const FieldSpec& field) {
  const auto& bs = c.boundaries();
  std::vector<std::size_t> ranks(bs.size(), 0);
  const long long n = static_cast<long long>(bs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) ranks[static_cast<std::size_t>(i)] = rank(bs[static_cast<std::size_t>(i)], field);
  return ranks;
}

std::vector<std::size_t> betti_from_ranks(const ChainComplex& c, const std::vector<std::size_t>& ranks) {
  const auto& dims = c.dims();
  std::vector<std::size_t> b(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t in = i == 0 ? 0 : ranks[i - 1];
    const std::size_t out = i < ranks.size() ? ranks[i] : 0;
    b[i] = dims[i] - in - out;
  }
  long long alt = 0;
  for (std::size_t i = 0; i < b.size(); ++i) alt += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(b[i]);
  if (alt != c.euler_characteristic()) throw InvariantViolation("Betti numbers violate rank-nullity");
  return b;
}

}  // namespace

std::vector<std::size_t> betti(const ChainComplex& c, const FieldSpec& field) {
  return betti_from_ranks(c, boundary_ranks(c, field));
}

std::vector<std::vector<std::size_t>> betti(const ChainComplex& c, const std::vector<FieldSpec>& fields) {
  const auto& bs = c.boundaries();
  const std::size_t nb = bs.size();
  std::vector<std::vector<std::size_t>> ranks(fields.size(), std::vector<std::size_t>(nb, 0));
  const long long jobs = static_cast<long long>(fields.size() * nb);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long j = 0; j < jobs; ++j) {
    const std::size_t f = static_cast<std::size_t>(j) / nb;
    const std::size_t i = static_cast<std::size_t>(j) % nb;
    ranks[f][i] = rank(bs[i], fields[f]);
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t f = 0; f < fields.size(); ++f) out.push_back(betti_from_ranks(c, ranks[f]));
  return out;
}

std::uint64_t kunneth_product_dims(const std::vector<std::uint64_t>& factor_h1_dims, std::size_t q) {
  // e[j] after processing a prefix is the j-th elementary symmetric polynomial.
  std::vector<std::uint64_t> e(q + 1, 0);
  e[0] = 1;
  for (std::uint64_t d : factor_h1_dims) {
    for (std::size_t j = q; j >= 1; --j) e[j] += e[j - 1] * d;
  }
  return e[q];
}

std::vector<std::uint64_t> kunneth_betti(const std::vector<std::vector<std::uint64_t>>& factor_betti) {
  std::vector<std::uint64_t> acc{1};
  for (const auto& f : factor_betti) {
    if (f.empty()) continue;
    std::vector<std::uint64_t> next(acc.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
    }
    acc = std::move(next);
  }
  return acc;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t nilpotent_betti_bound(std::size_t q, std::size_t hirsch_length) { return binomial(hirsch_length, q); }

std::size_t abelianization_rank(const Presentation& p) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const Word& r : p.relators) {
    auto sums = exponent_sums(r, p.num_generators());
    rows.emplace_back(sums.begin(), sums.end());
  }
  if (rows.empty()) return p.num_generators();
  return p.num_generators() - rank(Matrix::from_dense(rows), FieldSpec::rationals());
}

}  // namespace gradlab
