#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradlab/gog.hpp"

namespace gradlab {

/// Amalgamates Z^dim along its first coordinate circle with the cyclic
/// subgroup generated by `word`.
struct TorusAttach {
  std::size_t dim = 2;
  Word word;
};

/// Glues a compact orientable surface of the given genus with `boundaries`
/// boundary circles, one attaching word per circle.
struct SurfaceAttach {
  std::size_t genus = 1;
  std::size_t boundaries = 1;
  std::vector<Word> boundary_words;
  bool asserted_retraction = false;
};

using TowerStage = std::variant<TorusAttach, SurfaceAttach>;

/// Attaching words of stage s are words in the fundamental presentation of
/// the graph built from the base and stages before s, and each must lie in a
/// single vertex group.
struct TowerSpec {
  std::vector<Block> base;
  std::vector<TowerStage> stages;
};

struct Tower {
  GraphOfGroups graph;
  FundamentalPresentation fundamental;
  long long euler = 0;
  /// One entry per surface stage, as supplied.
  std::vector<bool> asserted_retractions;
};

/// The base blocks are wedged together along trivial edges from vertex 0.
/// Throws std::invalid_argument on invalid attaching words or excluded
/// surfaces (only punctured tori and Euler characteristic <= -2 are allowed).
Tower build_tower(const TowerSpec& spec);

/// Two Free(r) vertices joined by a cyclic edge sending its generator to w
/// on both sides.
GraphOfGroups double_of_free(std::size_t r, const Word& w);

struct CatalogEntry {
  std::string name;
  Presentation presentation;
  long long euler = 0;
  VolumeVector volume_vector;
  /// Present for entries given as graphs of catalog blocks.
  std::optional<GraphOfGroups> graph;
  /// Catalog names of the factors of a direct product entry.
  std::vector<std::string> product_factors;
};

/// free_1..3, surface_2, surface_3, abelian_1..3, z_free_z (F2 as a graph
/// with two Free(1) vertices), double_f2_ab, f2xf2, f2xf2xf2.
const std::map<std::string, CatalogEntry>& catalog();

/// Throws std::invalid_argument for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

TowerSpec tower_from_json(const nlohmann::json& j);

}  // namespace gradlab
