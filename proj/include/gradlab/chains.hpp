#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gradlab/permgrp.hpp"
#include "gradlab/words.hpp"

namespace gradlab {

/// One level B_n of a normal chain, stored as the finite quotient G/B_n
/// acting faithfully on `degree` points.
struct ChainLevel {
  std::size_t degree = 1;
  std::vector<Perm> images;
  std::uint64_t index = 1;
  std::string provenance;

  PermGroup quotient() const { return PermGroup(degree, images); }
};

struct Chain {
  Presentation group;
  std::vector<ChainLevel> levels;
  /// Levels dropped because they did not deepen the chain, and similar.
  std::vector<std::string> notes;
};

/// Level n is the intersection of the normal cores of all subgroups of index
/// at most bounds[n]. Throws ResourceExhausted from the enumerations.
Chain core_chain(const Presentation& p, const std::vector<std::size_t>& bounds,
                 std::size_t max_order = 200'000);

/// Invariant factors of H_1(G, Z) with coordinates: generator g maps to
/// sum_i coords[g][i] e_i in (+) Z/d_i, with d_i = 0 meaning Z. There is one
/// factor per generator.
struct AbelianInvariants {
  std::vector<long long> divisors;
  std::vector<std::vector<long long>> coords;
};

AbelianInvariants abelian_invariants(const Presentation& p);

/// Level n is the kernel of G -> H_1(G, Z/m_n), acting on disjoint cycles of
/// lengths gcd(d_i, m_n). Moduli must be >= 2 and each must divide the next.
Chain homology_cover_chain(const Presentation& p, const std::vector<long long>& moduli);

/// Direct product of factor chains, level by level, acting on disjoint point
/// sets. Generators are ordered factor by factor.
Chain product_chain(const std::vector<Chain>& factors);

/// Restricts an ambient chain to the subgroup generated by the given words.
/// Each level's quotient is the image of the subgroup in the ambient level.
Chain fiber_restrict(const Chain& ambient, const std::vector<Word>& subgroup_words);

/// Throws InvariantViolation unless each level's kernel contains the next
/// level's kernel and indices strictly increase.
void check_nesting(const Chain& c);

/// For a product chain: the quotient at each level splits as the direct
/// product of the factor images, so B_n ∩ F_j is the kernel of the factor
/// map. `factor_sizes` lists generator counts per factor. Throws
/// InvariantViolation on failure.
void check_product_property(const Chain& c, const std::vector<std::size_t>& factor_sizes);

/// Subgroup of a level's quotient generated by s-th powers.
PermGroup power_shadow(const ChainLevel& level, long long s);

}  // namespace gradlab
