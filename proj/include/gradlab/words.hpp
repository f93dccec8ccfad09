#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gradlab {

/// One run-length letter: generator `gen` raised to the nonzero power `exp`.
struct Letter {
  int gen = 0;
  int exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in a free group, stored run-length. Words produced by this module
/// are freely reduced: no zero exponents and no two adjacent letters on the
/// same generator.
using Word = std::vector<Letter>;

Word free_reduce(std::span<const Letter> w);
Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);

/// Reduced word for the commutator a b a^-1 b^-1.
Word commutator(std::span<const Letter> a, std::span<const Letter> b);

/// Conjugates the word so that its first and last letters do not cancel.
Word cyclic_reduce(std::span<const Letter> w);

/// Total letter count, i.e. the sum of |exp|.
std::size_t word_length(std::span<const Letter> w);

/// Parses whitespace-separated tokens `name` or `name^k`. Throws
/// std::invalid_argument on unknown names, malformed or zero exponents.
Word parse_word(std::string_view text, std::span<const std::string> generator_names);

std::string render_word(std::span<const Letter> w, std::span<const std::string> generator_names);

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  /// Set when the presentation 2-complex is known to be a K(G,1). Degree-2
  /// homology of its covers is then exact group homology.
  bool aspherical = false;

  std::size_t num_generators() const { return generator_names.size(); }
  std::size_t num_relators() const { return relators.size(); }

  /// Index of `name`, or -1.
  int generator_index(std::string_view name) const;
};

/// Builds a presentation from relator text. Relators are parsed and reduced.
Presentation make_presentation(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts,
                               bool aspherical = false);

/// Throws std::invalid_argument if a relator references a missing generator
/// or is not freely reduced.
void validate(const Presentation& p);

/// Direct product presentation: factor relators plus commutators between
/// generators of distinct factors. Names are kept when distinct across
/// factors and suffixed with _<j> otherwise.
Presentation direct_product(const std::vector<Presentation>& factors, bool aspherical);

struct DeficiencyData {
  std::size_t num_generators = 0;
  std::size_t num_relators = 0;
  long long def_value = 0;  ///< |R| - |X|

  friend bool operator==(const DeficiencyData&, const DeficiencyData&) = default;
};

DeficiencyData presentation_deficiency_data(const Presentation& p);

/// Exponent-sum vector of a word over `num_generators` generators.
std::vector<long long> exponent_sums(std::span<const Letter> w, std::size_t num_generators);

}  // namespace gradlab
