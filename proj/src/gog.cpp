#include "gradlab/gog.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "gradlab/error.hpp"
#include "gradlab/homology.hpp"

namespace gradlab {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceExhausted("volume count exceeds 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceExhausted("volume count exceeds 64 bits");
  return r;
}

std::vector<std::string> free_names(std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i) {
    names.push_back(r <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  }
  return names;
}

void check_word(const Word& w, std::size_t num_generators, const char* what) {
  for (const Letter& l : w) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= num_generators || l.exp == 0) {
      throw std::invalid_argument(std::string(what) + " references a generator outside its block");
    }
  }
  if (free_reduce(w) != w) throw std::invalid_argument(std::string(what) + " is not freely reduced");
}

std::uint64_t at(const VolumeVector& v, std::size_t k) { return k < v.size() ? v[k] : 0; }

}  // namespace

long long alternating_sum(const VolumeVector& v) {
  long long s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k % 2 ? -1 : 1) * static_cast<long long>(v[k]);
  return s;
}

Block Block::free(std::size_t r) {
  Block b;
  b.kind = Kind::Free;
  b.rank = r;
  return b;
}

Block Block::abelian(std::size_t n) {
  if (n < 1) throw std::invalid_argument("Abelian block needs rank >= 1");
  Block b;
  b.kind = Kind::Abelian;
  b.rank = n;
  return b;
}

Block Block::surface(std::size_t genus) {
  if (genus < 2) throw std::invalid_argument("Surface block needs genus >= 2");
  Block b;
  b.kind = Kind::Surface;
  b.rank = genus;
  return b;
}

Block Block::explicit_block(Presentation p, VolumeVector v, long long euler) {
  validate(p);
  if (alternating_sum(v) != euler) {
    throw std::invalid_argument("declared Euler characteristic " + std::to_string(euler) +
                                " does not match the volume vector");
  }
  Block b;
  b.kind = Kind::Explicit;
  b.explicit_presentation = std::move(p);
  b.explicit_volume = std::move(v);
  b.explicit_euler = euler;
  return b;
}

Presentation Block::presentation() const {
  switch (kind) {
    case Kind::Free:
      return make_presentation(free_names(rank), {}, true);
    case Kind::Abelian: {
      Presentation p;
      for (std::size_t i = 0; i < rank; ++i) p.generator_names.push_back("x" + std::to_string(i + 1));
      for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = i + 1; j < rank; ++j) {
          p.relators.push_back(commutator(Word{{static_cast<int>(i), 1}}, Word{{static_cast<int>(j), 1}}));
        }
      }
      p.aspherical = rank <= 2;
      return p;
    }
    case Kind::Surface: {
      Presentation p;
      Word rel;
      for (std::size_t i = 0; i < rank; ++i) {
        p.generator_names.push_back("a" + std::to_string(i + 1));
        p.generator_names.push_back("b" + std::to_string(i + 1));
        const int a = static_cast<int>(2 * i);
        rel = concat(rel, commutator(Word{{a, 1}}, Word{{a + 1, 1}}));
      }
      p.relators.push_back(rel);
      p.aspherical = true;
      return p;
    }
    case Kind::Explicit:
      return explicit_presentation;
  }
  return {};
}

VolumeVector Block::volume_vector() const {
  switch (kind) {
    case Kind::Free:
      return rank == 0 ? VolumeVector{1} : VolumeVector{1, rank};
    case Kind::Abelian: {
      VolumeVector v;
      for (std::size_t k = 0; k <= rank; ++k) v.push_back(binomial(rank, k));
      return v;
    }
    case Kind::Surface:
      return {1, 2 * rank, 1};
    case Kind::Explicit:
      return explicit_volume;
  }
  return {};
}

long long Block::euler() const {
  return kind == Kind::Explicit ? explicit_euler : alternating_sum(volume_vector());
}

bool Block::aspherical() const {
  switch (kind) {
    case Kind::Free:
    case Kind::Surface:
      return true;
    case Kind::Abelian:
      return rank <= 2;
    case Kind::Explicit:
      return explicit_presentation.aspherical;
  }
  return false;
}

std::size_t Block::num_generators() const {
  switch (kind) {
    case Kind::Free:
    case Kind::Abelian:
      return rank;
    case Kind::Surface:
      return 2 * rank;
    case Kind::Explicit:
      return explicit_presentation.num_generators();
  }
  return 0;
}

std::string Block::describe() const {
  switch (kind) {
    case Kind::Free:
      return "Free(" + std::to_string(rank) + ")";
    case Kind::Abelian:
      return "Abelian(" + std::to_string(rank) + ")";
    case Kind::Surface:
      return "Surface(" + std::to_string(rank) + ")";
    case Kind::Explicit:
      return "Explicit(" + std::to_string(explicit_presentation.num_generators()) + " gens)";
  }
  return {};
}

void validate(const GraphOfGroups& g) {
  if (g.vertices.empty()) throw std::invalid_argument("graph of groups has no vertices");
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : g.edges) {
    if (e.source >= n || e.target >= n) throw std::invalid_argument("edge endpoint out of range");
    if (!e.edge_block.trivial() && !e.edge_block.cyclic()) {
      throw std::invalid_argument("edge groups must be trivial or infinite cyclic, got " + e.edge_block.describe());
    }
    if (e.edge_block.trivial()) {
      if (!e.iota_word.empty() || !e.tau_word.empty()) {
        throw std::invalid_argument("trivial edge group with nonempty edge words");
      }
    } else {
      if (e.iota_word.empty() || e.tau_word.empty()) throw std::invalid_argument("cyclic edge word is trivial");
      check_word(e.iota_word, g.vertices[e.source].num_generators(), "iota word");
      check_word(e.tau_word, g.vertices[e.target].num_generators(), "tau word");
    }
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw std::invalid_argument("graph of groups is disconnected");
}

Word FundamentalPresentation::vertex_word(std::size_t v, const Word& w) const {
  Word out = w;
  for (Letter& l : out) l.gen += static_cast<int>(vertex_offset.at(v));
  return out;
}

FundamentalPresentation fundamental_presentation(const GraphOfGroups& g) {
  validate(g);
  FundamentalPresentation fp;
  Presentation& p = fp.presentation;

  std::vector<Presentation> blocks;
  std::set<std::string> seen_names;
  bool distinct = true;
  for (const Block& b : g.vertices) {
    blocks.push_back(b.presentation());
    for (const auto& name : blocks.back().generator_names) distinct = seen_names.insert(name).second && distinct;
  }
  p.aspherical = true;
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    fp.vertex_offset.push_back(p.generator_names.size());
    for (const auto& name : blocks[v].generator_names) {
      p.generator_names.push_back(distinct ? name : name + "_" + std::to_string(v));
    }
    p.aspherical = p.aspherical && g.vertices[v].aspherical();
  }
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    for (const Word& r : blocks[v].relators) p.relators.push_back(fp.vertex_word(v, r));
  }

  // BFS spanning tree from vertex 0, scanning edges in order.
  const std::size_t n = g.vertices.size();
  fp.tree_edge.assign(g.edges.size(), false);
  std::vector<char> reached(n, 0);
  std::queue<std::size_t> queue;
  reached[0] = 1;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const Edge& edge = g.edges[e];
      if (edge.source != v && edge.target != v) continue;
      const std::size_t w = edge.source == v ? edge.target : edge.source;
      if (reached[w]) continue;
      reached[w] = 1;
      fp.tree_edge[e] = true;
      queue.push(w);
    }
  }

  std::set<std::string> names(p.generator_names.begin(), p.generator_names.end());
  fp.stable_letter.assign(g.edges.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (fp.tree_edge[e]) continue;
    std::string name = "t" + std::to_string(e);
    while (names.count(name)) name += "_";
    names.insert(name);
    fp.stable_letter[e] = static_cast<int>(p.generator_names.size());
    p.generator_names.push_back(name);
  }

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& edge = g.edges[e];
    if (edge.edge_block.trivial()) continue;
    const Word iota = fp.vertex_word(edge.source, edge.iota_word);
    const Word tau = fp.vertex_word(edge.target, edge.tau_word);
    Word rel;
    if (fp.tree_edge[e]) {
      rel = concat(iota, inverse(tau));
    } else {
      const Word t{{fp.stable_letter[e], 1}};
      rel = concat(concat(concat(t, iota), inverse(t)), inverse(tau));
    }
    if (!rel.empty()) p.relators.push_back(rel);
  }
  validate(p);
  return fp;
}

long long euler_characteristic(const GraphOfGroups& g) {
  long long chi = 0;
  for (const Block& b : g.vertices) chi += b.euler();
  for (const Edge& e : g.edges) chi -= e.edge_block.euler();
  return chi;
}

VolumeVector catalog_volume_provider(const Block& b, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("image order must be positive");
  switch (b.kind) {
    case Block::Kind::Free:
      if (b.rank == 0) return {1};
      return {1, checked_add(checked_mul(m, b.rank - 1), 1)};
    case Block::Kind::Surface:
      return {1, checked_mul(2, checked_add(checked_mul(m, b.rank - 1), 1)), 1};
    case Block::Kind::Abelian:
      return b.volume_vector();
    case Block::Kind::Explicit:
      if (m != 1) {
        throw std::invalid_argument("no closed form for a proper finite-index subgroup of " + b.describe());
      }
      return b.explicit_volume;
  }
  return {};
}

CoverData cover_data(const GraphOfGroups& g, const FundamentalPresentation& fp,
                     const std::vector<Perm>& images, std::size_t degree) {
  const Presentation& p = fp.presentation;
  if (images.size() != p.num_generators()) throw std::invalid_argument("one image per generator required");
  for (const Word& r : p.relators) {
    if (!evaluate(r, images, degree).is_identity()) {
      throw std::invalid_argument("generator images do not satisfy the relators");
    }
  }
  CoverData d;
  d.quotient_order = PermGroup(degree, images).order();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto first = images.begin() + static_cast<std::ptrdiff_t>(fp.vertex_offset[v]);
    std::vector<Perm> gens(first, first + static_cast<std::ptrdiff_t>(g.vertices[v].num_generators()));
    d.vertex_image_order.push_back(PermGroup(degree, std::move(gens)).order());
  }
  for (const Edge& e : g.edges) {
    if (e.edge_block.trivial()) {
      d.edge_image_order.push_back(1);
      continue;
    }
    Perm x = evaluate(fp.vertex_word(e.source, e.iota_word), images, degree);
    d.edge_image_order.push_back(PermGroup(degree, {x}).order());
  }
  return d;
}

VolumeVector subgroup_volume_vector(const GraphOfGroups& g, const CoverData& d, const VolumeProvider& provider) {
  VolumeVector r;
  auto add = [&](std::size_t k, std::uint64_t x) {
    if (r.size() <= k) r.resize(k + 1, 0);
    r[k] = checked_add(r[k], x);
  };
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::uint64_t m = d.vertex_image_order[v];
    const VolumeVector piece = provider(g.vertices[v], m);
    for (std::size_t k = 0; k < piece.size(); ++k) add(k, checked_mul(d.quotient_order / m, piece[k]));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const std::uint64_t m = d.edge_image_order[e];
    const VolumeVector piece = provider(g.edges[e].edge_block, m);
    for (std::size_t k = 0; k < piece.size(); ++k) add(k + 1, checked_mul(d.quotient_order / m, piece[k]));
  }
  return r;
}

VolumeVector subgroup_volume_vector(const GraphOfGroups& g, const FundamentalPresentation& fp,
                                    const std::vector<Perm>& images, std::size_t degree,
                                    const VolumeProvider& provider) {
  return subgroup_volume_vector(g, cover_data(g, fp, images, degree), provider);
}

std::uint64_t mayer_vietoris_bound(const GraphOfGroups& g, const CoverData& d, std::size_t j,
                                   const VolumeProvider& betti_provider) {
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::uint64_t m = d.vertex_image_order[v];
    total = checked_add(total, checked_mul(d.quotient_order / m, at(betti_provider(g.vertices[v], m), j)));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const std::uint64_t m = d.edge_image_order[e];
    const VolumeVector b = betti_provider(g.edges[e].edge_block, m);
    const std::uint64_t term = checked_add(at(b, j), j == 0 ? 0 : checked_mul(2, at(b, j - 1)));
    total = checked_add(total, checked_mul(d.quotient_order / m, term));
  }
  return total;
}

std::pair<Ratio, Ratio> coset_ratio_check(const PermGroup& quotient, const std::vector<Perm>& h_images) {
  const Ratio lhs{subgroup_index(quotient, h_images), quotient.order()};
  const Ratio rhs{1, PermGroup(quotient.degree(), h_images).order()};
  return {lhs, rhs};
}

Block block_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "free") return Block::free(j.at("rank").get<std::size_t>());
  if (type == "abelian") return Block::abelian(j.at("rank").get<std::size_t>());
  if (type == "surface") return Block::surface(j.at("genus").get<std::size_t>());
  if (type == "explicit") {
    Presentation p = make_presentation(j.at("generators").get<std::vector<std::string>>(),
                                       j.value("relators", std::vector<std::string>{}), j.value("aspherical", false));
    return Block::explicit_block(std::move(p), j.at("volume_vector").get<VolumeVector>(), j.at("euler").get<long long>());
  }
  throw std::invalid_argument("unknown block type '" + type + "'");
}

nlohmann::json to_json(const Block& b) {
  switch (b.kind) {
    case Block::Kind::Free:
      return {{"type", "free"}, {"rank", b.rank}};
    case Block::Kind::Abelian:
      return {{"type", "abelian"}, {"rank", b.rank}};
    case Block::Kind::Surface:
      return {{"type", "surface"}, {"genus", b.rank}};
    case Block::Kind::Explicit: {
      const Presentation& p = b.explicit_presentation;
      std::vector<std::string> rels;
      for (const Word& r : p.relators) rels.push_back(render_word(r, p.generator_names));
      return {{"type", "explicit"},         {"generators", p.generator_names},
              {"relators", rels},           {"aspherical", p.aspherical},
              {"volume_vector", b.explicit_volume}, {"euler", b.explicit_euler}};
    }
  }
  return {};
}

GraphOfGroups graph_from_json(const nlohmann::json& j) {
  GraphOfGroups g;
  for (const auto& v : j.at("vertices")) g.vertices.push_back(block_from_json(v));
  for (const auto& ej : j.value("edges", nlohmann::json::array())) {
    Edge e;
    e.source = ej.at("source").get<std::size_t>();
    e.target = ej.at("target").get<std::size_t>();
    if (e.source >= g.vertices.size() || e.target >= g.vertices.size()) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    e.edge_block = ej.contains("edge_block") ? block_from_json(ej.at("edge_block")) : Block::free(1);
    e.iota_word = parse_word(ej.value("iota_word", ""), g.vertices[e.source].presentation().generator_names);
    e.tau_word = parse_word(ej.value("tau_word", ""), g.vertices[e.target].presentation().generator_names);
    g.edges.push_back(std::move(e));
  }
  validate(g);
  return g;
}

nlohmann::json to_json(const GraphOfGroups& g) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const Block& b : g.vertices) j["vertices"].push_back(to_json(b));
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges) {
    j["edges"].push_back({{"source", e.source},
                          {"target", e.target},
                          {"edge_block", to_json(e.edge_block)},
                          {"iota_word", render_word(e.iota_word, g.vertices[e.source].presentation().generator_names)},
                          {"tau_word", render_word(e.tau_word, g.vertices[e.target].presentation().generator_names)}});
  }
  return j;
}

}  // namespace gradlab
