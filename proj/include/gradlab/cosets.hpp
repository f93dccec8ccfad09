#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradlab/permgrp.hpp"
#include "gradlab/words.hpp"

namespace gradlab {

/// Bumped whenever enumeration order or numbering changes; part of cache keys.
inline constexpr int kCosetStrategyVersion = 1;

/// Column of generator `gen` (or its inverse) in a coset table row.
constexpr std::size_t column(int gen, bool inverse) {
  return 2 * static_cast<std::size_t>(gen) + (inverse ? 1 : 0);
}

/// Complete action of the generators (and inverses) on the right cosets of a
/// subgroup H. Coset 0 is H itself.
struct CosetTable {
  Presentation presentation;
  std::vector<Word> subgroup_words;
  /// table[c][column(g, inv)] is the coset c * g^{+-1}.
  std::vector<std::vector<int>> table;

  std::size_t num_cosets() const { return table.size(); }
  int act(int coset, int gen, int exp) const;
  /// Coset reached by tracing w from `coset`.
  int trace(int coset, std::span<const Letter> w) const;
};

/// Checks completeness, the permutation property, relator closure from every
/// coset, and that subgroup words fix coset 0. Throws InvariantViolation.
void verify_table(const CosetTable& t);

/// HLT coset enumeration without lookahead. Throws ResourceExhausted if the
/// table would need more than `max_cosets` rows at once.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words,
                        std::size_t max_cosets);

struct LowIndexOptions {
  std::size_t max_index = 1;
  std::uint64_t node_budget = 5'000'000;
};

/// One table per conjugacy class of subgroups of index <= max_index, ordered
/// by index and then by the canonical table. Throws ResourceExhausted when
/// the search exceeds the node budget.
std::vector<CosetTable> low_index_subgroups(const Presentation& p, const LowIndexOptions& opts);
std::vector<CosetTable> low_index_subgroups(const Presentation& p, std::size_t max_index);

/// Number of distinct conjugates of the subgroup described by t.
std::size_t conjugacy_class_size(const CosetTable& t);

/// Renumbers cosets by first occurrence when scanning rows in order from
/// `base` (which becomes coset 0).
std::vector<std::vector<int>> standardize(const std::vector<std::vector<int>>& table, int base);

struct PermRep {
  PermGroup group;
  std::vector<Perm> generator_images;
};

PermRep perm_rep(const CosetTable& t);

/// Regular coset table of the image group: cosets are elements of the
/// quotient, numbered in BFS order. Throws ResourceExhausted above the cap.
CosetTable regular_table(const Presentation& p, std::span<const Perm> generator_images,
                         std::size_t order_cap = 200'000);

/// Table of the normal core of t's subgroup.
CosetTable normal_core_table(const CosetTable& t, std::size_t order_cap = 200'000);

/// A presentation of the subgroup together with each generator as a word in
/// the ambient generators.
struct SubgroupPresentation {
  Presentation presentation;
  std::vector<Word> generator_words;
};

/// Reidemeister-Schreier rewrite with the BFS Schreier transversal. Yields
/// exactly k(|X|-1)+1 generators and k|R| relators.
SubgroupPresentation reidemeister_schreier(const CosetTable& t);

/// Schreier transversal representative of each coset.
std::vector<Word> schreier_transversal(const CosetTable& t);

nlohmann::json to_json(const CosetTable& t);
/// Rebuilds a table for the given presentation and subgroup from its JSON
/// array-of-arrays form; the result is verified.
CosetTable table_from_json(const nlohmann::json& j, const Presentation& p,
                           const std::vector<Word>& subgroup_words);

/// Stable hash of presentation, subgroup words and strategy version.
std::string table_cache_key(const Presentation& p, const std::vector<Word>& subgroup_words);

/// Directory-backed cache of enumerated tables.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir);
  std::optional<CosetTable> load(const Presentation& p, const std::vector<Word>& subgroup_words) const;
  void store(const CosetTable& t) const;

 private:
  std::filesystem::path dir_;
};

/// todd_coxeter, consulting and filling the cache when one is given.
CosetTable todd_coxeter_cached(const Presentation& p, const std::vector<Word>& subgroup_words,
                               std::size_t max_cosets, const TableCache* cache);

}  // namespace gradlab
