#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradlab/chains.hpp"
#include "gradlab/gog.hpp"
#include "gradlab/matrix.hpp"

namespace gradlab {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Mode { Rank, Deficiency, Volume, Homology, MvCheck };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode m);

struct ExperimentConfig {
  /// The config as read, echoed into JSON reports.
  nlohmann::json raw;
  nlohmann::json group;
  nlohmann::json chain;
  std::vector<FieldSpec> fields{FieldSpec::rationals()};
  std::size_t max_degree = 2;
  /// k for the volume run; must be >= 2.
  std::size_t volume_degree = 2;
  /// Cap on coset tables, quotient orders and low-index search sizes.
  std::size_t max_cosets = 200'000;
  std::optional<std::string> out;
  std::string format = "csv";
};

/// Throws std::invalid_argument on schema errors, unknown catalog names or
/// invalid field specs.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

struct ResolvedGroup {
  std::string label;
  Presentation presentation;
  /// Known for catalog groups, graphs, towers, aspherical presentations and
  /// products or finite-index subgroups of those.
  std::optional<long long> euler;
  std::optional<GraphOfGroups> graph;
  /// Generators of `presentation` in graph order when a graph is present.
  std::optional<FundamentalPresentation> fundamental;
  /// Direct factors, for product groups.
  std::vector<ResolvedGroup> factors;
  /// For fiber groups: the ambient product and each generator of
  /// `presentation` as a word in the ambient generators.
  std::vector<ResolvedGroup> ambient;
  std::vector<Word> ambient_words;
  std::vector<bool> asserted_retractions;
};

/// Group spec: {"catalog": name} | {"presentation": {generators, relators,
/// aspherical}} | {"tower": TowerSpec} | {"graph": GraphOfGroups} |
/// {"product": [group specs]} | {"fiber": {"product": [group specs],
/// "words": [...]}}. Fiber subgroups must have finite index.
ResolvedGroup resolve_group(const nlohmann::json& spec, std::size_t max_cosets = 200'000);

/// Chain spec: {"type": "core", "bounds": [...]} | {"type": "homology",
/// "moduli": [...]} | {"type": "product", "factors": [chain specs]} |
/// {"type": "fiber", "ambient": chain spec}.
struct BuiltChain {
  Chain chain;
  /// Factor chains of a product chain, aligned with group.factors.
  std::vector<Chain> factors;
};

BuiltChain build_chain(const ResolvedGroup& g, const nlohmann::json& spec, std::size_t max_cosets = 200'000);

/// One level and field of a gradient table. Bounds are raw integers; the
/// gradients are these divided by `index`.
struct GradientRow {
  std::size_t level = 0;
  std::uint64_t index = 1;
  std::string field;
  std::optional<std::uint64_t> b0, b1, b2;
  std::optional<std::int64_t> d_lower, d_upper, def_lower, def_upper;
  /// r_2 of the subgroup volume vector; vol2_ratio = r2 / index.
  std::optional<std::uint64_t> r2;
  std::optional<std::int64_t> target_rg, target_dg;
  /// JSON only.
  VolumeVector volume_vector;
  std::vector<std::uint64_t> kunneth_betti;

  std::optional<double> vol2_ratio() const;
  friend bool operator==(const GradientRow&, const GradientRow&) = default;
};

struct GradientTable {
  std::string mode;
  std::vector<GradientRow> rows;
  nlohmann::json config;
  std::vector<std::string> provenance;
  /// "exact" or "upper bound (Hopf)".
  std::string b2_kind = "exact";
  std::size_t volume_degree = 2;
};

/// Rank, deficiency, volume and homology runs. Throws InvariantViolation if
/// a sandwich inequality fails or the Künneth and complex paths disagree.
GradientTable run_experiment(const ExperimentConfig& cfg, Mode mode);

GradientTable run_rank_gradient(const ExperimentConfig& cfg);
GradientTable run_deficiency_gradient(const ExperimentConfig& cfg);
GradientTable run_volume_gradient(const ExperimentConfig& cfg, std::size_t k);
GradientTable run_homology_gradient(const ExperimentConfig& cfg);

struct MvRow {
  std::size_t level = 0;
  std::uint64_t index = 1;
  std::string field;
  std::size_t degree = 1;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool holds() const { return lhs <= rhs; }
};

struct MvReport {
  std::vector<MvRow> rows;
  std::vector<std::string> provenance;
};

/// Compares dim H_j(B_n) from the covering complex with the Mayer-Vietoris
/// sum for j = 1, 2 (j = 2 only for aspherical presentations). Throws
/// InvariantViolation on the first failure.
MvReport run_mv_check(const ExperimentConfig& cfg);

}  // namespace gradlab
