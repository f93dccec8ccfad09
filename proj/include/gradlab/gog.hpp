#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradlab/permgrp.hpp"
#include "gradlab/words.hpp"

namespace gradlab {

/// r_0, r_1, ..., r_d.
using VolumeVector = std::vector<std::uint64_t>;

long long alternating_sum(const VolumeVector& v);

/// A vertex or edge group drawn from the building-block catalog.
struct Block {
  enum class Kind { Free, Abelian, Surface, Explicit };

  Kind kind = Kind::Free;
  /// Free rank, abelian rank or surface genus.
  std::size_t rank = 0;
  Presentation explicit_presentation;
  VolumeVector explicit_volume;
  long long explicit_euler = 0;

  static Block free(std::size_t r);
  static Block abelian(std::size_t n);  // n >= 1
  static Block surface(std::size_t genus);  // genus >= 2
  /// Throws std::invalid_argument unless euler is the alternating sum of v.
  static Block explicit_block(Presentation p, VolumeVector v, long long euler);

  /// Free: a, b, c, ...; Abelian: x1..xn; Surface: a1, b1, ..., ag, bg.
  Presentation presentation() const;
  VolumeVector volume_vector() const;
  long long euler() const;
  bool aspherical() const;
  std::size_t num_generators() const;
  bool trivial() const { return kind == Kind::Free && rank == 0; }
  bool cyclic() const { return kind == Kind::Free && rank == 1; }
  std::string describe() const;
};

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  Block edge_block;
  /// Image of the edge generator in the source and target vertex groups, as
  /// words in those blocks' own generators. Empty for a trivial edge group.
  Word iota_word;
  Word tau_word;
};

struct GraphOfGroups {
  std::vector<Block> vertices;
  std::vector<Edge> edges;
};

/// Throws std::invalid_argument on disconnected graphs, unsupported edge
/// blocks, or edge words that are invalid or (for cyclic edges) trivial.
void validate(const GraphOfGroups& g);

struct FundamentalPresentation {
  Presentation presentation;
  /// First generator of each vertex block in the presentation.
  std::vector<std::size_t> vertex_offset;
  /// Stable letter of each edge, or -1 for spanning-tree edges.
  std::vector<int> stable_letter;
  std::vector<bool> tree_edge;

  /// Shifts a word in vertex v's own generators into the presentation.
  Word vertex_word(std::size_t v, const Word& w) const;
};

/// Vertex generators come first, in vertex order, followed by one stable
/// letter t<e> per non-tree edge. Names are kept when distinct across
/// vertices and suffixed with _<v> otherwise. The spanning tree is found by
/// BFS from vertex 0.
FundamentalPresentation fundamental_presentation(const GraphOfGroups& g);

/// Sum of vertex Euler characteristics minus the sum over edges.
long long euler_characteristic(const GraphOfGroups& g);

/// Volume vector of B ∩ block when the block's image in the quotient has the
/// given order.
using VolumeProvider = std::function<VolumeVector(const Block&, std::uint64_t image_order)>;

/// Closed forms for catalog blocks: Free(r) gives (1, m(r-1)+1), Surface(g)
/// gives (1, 2g', 1) with g' = m(g-1)+1, Abelian(n) gives binomials. Explicit
/// blocks are only supported when their image is trivial.
VolumeVector catalog_volume_provider(const Block& b, std::uint64_t image_order);

/// Image orders of vertex and edge groups under a map to a finite group.
struct CoverData {
  std::uint64_t quotient_order = 1;
  std::vector<std::uint64_t> vertex_image_order;
  std::vector<std::uint64_t> edge_image_order;
};

/// Throws std::invalid_argument if the images do not satisfy the relators.
CoverData cover_data(const GraphOfGroups& g, const FundamentalPresentation& fp,
                     const std::vector<Perm>& generator_images, std::size_t degree);

/// r_k(B) = sum_v [G:BG_v] r_k(B∩G_v) + sum_e [G:BG_e] r_{k-1}(B∩G_e), where B
/// is the kernel of the map given by the generator images.
VolumeVector subgroup_volume_vector(const GraphOfGroups& g, const FundamentalPresentation& fp,
                                    const std::vector<Perm>& generator_images, std::size_t degree,
                                    const VolumeProvider& provider = catalog_volume_provider);
VolumeVector subgroup_volume_vector(const GraphOfGroups& g, const CoverData& data,
                                    const VolumeProvider& provider = catalog_volume_provider);

/// Right side of the Mayer-Vietoris bound on dim H_j(B):
/// sum_v [G:BG_v] b_j(B∩G_v) + sum_e [G:BG_e] (b_j(B∩G_e) + 2 b_{j-1}(B∩G_e)).
/// Betti numbers of catalog pieces equal their volume vectors.
std::uint64_t mayer_vietoris_bound(const GraphOfGroups& g, const CoverData& data, std::size_t j,
                                   const VolumeProvider& betti_provider = catalog_volume_provider);

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// ([G:BH]/[G:B], 1/[H:B∩H]) for the subgroup H with the given images. The
/// first uses subgroup_index, the second the order of <h_images>.
std::pair<Ratio, Ratio> coset_ratio_check(const PermGroup& quotient, const std::vector<Perm>& h_images);

Block block_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Block& b);
/// {"vertices": [blocks], "edges": [{source, target, edge_block, iota_word, tau_word}]}
GraphOfGroups graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GraphOfGroups& g);

}  // namespace gradlab
