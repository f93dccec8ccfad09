#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gradlab/cosets.hpp"
#include "gradlab/matrix.hpp"

namespace gradlab {

/// Graded chain complex C_0..C_d. boundaries[i-1] is the map C_i -> C_{i-1},
/// stored as a dim C_{i-1} x dim C_i matrix.
class ChainComplex {
 public:
  /// Checks boundary shapes and that consecutive boundaries compose to zero
  /// over Z (hence over every field). Throws InvariantViolation.
  ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> boundaries);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& boundaries() const { return boundaries_; }
  std::size_t top_degree() const { return dims_.empty() ? 0 : dims_.size() - 1; }
  /// Alternating sum of cell counts.
  long long euler_characteristic() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Matrix> boundaries_;
};

/// Cellular chain complex of the cover of the presentation 2-complex whose
/// sheets are the cosets of t: k vertices, k|X| edges, k|R| faces.
ChainComplex covering_complex(const CosetTable& t);

/// b_i = dim C_i - rank d_i - rank d_{i+1}. The two ranks per degree are
/// computed in parallel.
std::vector<std::size_t> betti(const ChainComplex& c, const FieldSpec& field);

/// Betti numbers over several fields at once.
std::vector<std::vector<std::size_t>> betti(const ChainComplex& c, const std::vector<FieldSpec>& fields);

/// Elementary symmetric polynomial e_q of the factor H_1 dimensions: the
/// degree-q homology of a product of free groups.
std::uint64_t kunneth_product_dims(const std::vector<std::uint64_t>& factor_h1_dims, std::size_t q);

/// Betti vector of a product from the factors' Betti vectors over a field.
std::vector<std::uint64_t> kunneth_betti(const std::vector<std::vector<std::uint64_t>>& factor_betti);

/// binomial(hirsch_length, q): upper bound for dim H_q of a torsion-free
/// nilpotent group of the given Hirsch length.
std::uint64_t nilpotent_betti_bound(std::size_t q, std::size_t hirsch_length);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Rank of the abelianization: |X| minus the rational rank of the
/// exponent-sum matrix of the relators.
std::size_t abelianization_rank(const Presentation& p);

}  // namespace gradlab
