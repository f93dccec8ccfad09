#include "gradlab/towers.hpp"

#include <stdexcept>

namespace gradlab {

namespace {

class TowerBuilder {
 public:
  explicit TowerBuilder(const std::vector<Block>& base) {
    if (base.empty()) throw std::invalid_argument("tower base is empty");
    tower_.graph.vertices = base;
    for (std::size_t v = 1; v < base.size(); ++v) tower_.graph.edges.push_back({0, v, Block::free(0), {}, {}});
    tower_.euler = euler_characteristic(tower_.graph);
    refresh();
  }

  const Presentation& current() const { return tower_.fundamental.presentation; }

  void attach(const TorusAttach& t) {
    if (t.dim < 1) throw std::invalid_argument("torus attachment needs dim >= 1");
    const auto [v, local] = locate(t.word);
    const std::size_t fresh = tower_.graph.vertices.size();
    tower_.graph.vertices.push_back(Block::abelian(t.dim));
    tower_.graph.edges.push_back({v, fresh, Block::free(1), local, Word{{0, 1}}});
    tower_.euler += Block::abelian(t.dim).euler();
    refresh();
  }

  void attach(const SurfaceAttach& s) {
    if (s.boundaries < 1) throw std::invalid_argument("attached surface needs at least one boundary circle");
    if (s.boundary_words.size() != s.boundaries) {
      throw std::invalid_argument("one attaching word per boundary circle required");
    }
    const long long chi = 2 - 2 * static_cast<long long>(s.genus) - static_cast<long long>(s.boundaries);
    const bool punctured_torus = s.genus == 1 && s.boundaries == 1;
    if (!punctured_torus && chi > -2) {
      throw std::invalid_argument("attached surface must be a punctured torus or have Euler characteristic <= -2");
    }
    std::vector<std::pair<std::size_t, Word>> located;
    for (const Word& w : s.boundary_words) located.push_back(locate(w));

    const std::size_t g = s.genus, b = s.boundaries;
    const Block piece = Block::free(2 * g + b - 1);
    Word last;
    for (std::size_t i = 0; i < g; ++i) {
      last = concat(last, commutator(Word{{static_cast<int>(2 * i), 1}}, Word{{static_cast<int>(2 * i + 1), 1}}));
    }
    std::vector<Word> boundary;
    for (std::size_t j = 0; j + 1 < b; ++j) {
      const Word c{{static_cast<int>(2 * g + j), 1}};
      boundary.push_back(c);
      last = concat(last, c);
    }
    boundary.push_back(last);

    const std::size_t fresh = tower_.graph.vertices.size();
    tower_.graph.vertices.push_back(piece);
    for (std::size_t j = 0; j < b; ++j) {
      tower_.graph.edges.push_back({located[j].first, fresh, Block::free(1), located[j].second, boundary[j]});
    }
    tower_.euler += piece.euler();
    tower_.asserted_retractions.push_back(s.asserted_retraction);
    refresh();
  }

  Tower finish() { return std::move(tower_); }

 private:
  void refresh() { tower_.fundamental = fundamental_presentation(tower_.graph); }

  /// Vertex containing every letter of w, and w in that vertex's generators.
  std::pair<std::size_t, Word> locate(const Word& w) const {
    if (w.empty()) throw std::invalid_argument("attaching word is empty");
    if (free_reduce(w) != w) throw std::invalid_argument("attaching word is not freely reduced");
    const auto& offsets = tower_.fundamental.vertex_offset;
    std::optional<std::size_t> vertex;
    for (const Letter& l : w) {
      std::optional<std::size_t> owner;
      for (std::size_t v = 0; v < offsets.size(); ++v) {
        const auto gen = static_cast<std::size_t>(l.gen);
        if (gen >= offsets[v] && gen < offsets[v] + tower_.graph.vertices[v].num_generators()) owner = v;
      }
      if (!owner) throw std::invalid_argument("attaching word uses a generator outside every vertex group");
      if (vertex && *vertex != *owner) throw std::invalid_argument("attaching word spans several vertex groups");
      vertex = owner;
    }
    Word local = w;
    for (Letter& l : local) l.gen -= static_cast<int>(offsets[*vertex]);
    return {*vertex, local};
  }

  Tower tower_;
};

CatalogEntry graph_entry(std::string name, GraphOfGroups g) {
  CatalogEntry e;
  e.name = std::move(name);
  const FundamentalPresentation fp = fundamental_presentation(g);
  e.presentation = fp.presentation;
  e.euler = euler_characteristic(g);
  e.volume_vector = subgroup_volume_vector(g, fp, std::vector<Perm>(fp.presentation.num_generators(), Perm::identity(1)), 1);
  e.graph = std::move(g);
  return e;
}

CatalogEntry block_entry(std::string name, const Block& b) {
  return graph_entry(std::move(name), GraphOfGroups{{b}, {}});
}

CatalogEntry product_entry(std::string name, std::size_t factors, bool aspherical) {
  CatalogEntry e;
  e.name = std::move(name);
  const Presentation f2 = Block::free(2).presentation();
  e.presentation = direct_product(std::vector<Presentation>(factors, f2), aspherical);
  for (std::size_t i = 0; i < e.presentation.generator_names.size(); ++i) {
    e.presentation.generator_names[i] = std::string(1, static_cast<char>('a' + i));
  }
  e.euler = factors % 2 ? -1 : 1;
  // (1 + 2x)^factors.
  e.volume_vector = {1};
  for (std::size_t f = 0; f < factors; ++f) {
    VolumeVector next(e.volume_vector.size() + 1, 0);
    for (std::size_t k = 0; k < e.volume_vector.size(); ++k) {
      next[k] += e.volume_vector[k];
      next[k + 1] += 2 * e.volume_vector[k];
    }
    e.volume_vector = next;
  }
  e.product_factors.assign(factors, "free_2");
  return e;
}

}  // namespace

Tower build_tower(const TowerSpec& spec) {
  TowerBuilder builder(spec.base);
  for (const TowerStage& stage : spec.stages) {
    std::visit([&](const auto& s) { builder.attach(s); }, stage);
  }
  return builder.finish();
}

GraphOfGroups double_of_free(std::size_t r, const Word& w) {
  if (w.empty()) throw std::invalid_argument("double of a free group needs a nonempty word");
  GraphOfGroups g;
  g.vertices = {Block::free(r), Block::free(r)};
  g.edges.push_back({0, 1, Block::free(1), w, w});
  validate(g);
  return g;
}

const std::map<std::string, CatalogEntry>& catalog() {
  static const std::map<std::string, CatalogEntry> entries = [] {
    std::map<std::string, CatalogEntry> m;
    auto add = [&](CatalogEntry e) { m.emplace(e.name, std::move(e)); };
    for (std::size_t r = 1; r <= 3; ++r) add(block_entry("free_" + std::to_string(r), Block::free(r)));
    for (std::size_t g = 2; g <= 3; ++g) add(block_entry("surface_" + std::to_string(g), Block::surface(g)));
    for (std::size_t n = 1; n <= 3; ++n) add(block_entry("abelian_" + std::to_string(n), Block::abelian(n)));
    add(graph_entry("z_free_z", GraphOfGroups{{Block::free(1), Block::free(1)}, {{0, 1, Block::free(0), {}, {}}}}));
    add(graph_entry("double_f2_ab", double_of_free(2, Word{{0, 1}, {1, 1}})));
    add(product_entry("f2xf2", 2, true));
    // The product presentation complex is only the 2-skeleton of the product
    // of three wedges.
    add(product_entry("f2xf2xf2", 3, false));
    return m;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  const auto& c = catalog();
  auto it = c.find(name);
  if (it == c.end()) throw std::invalid_argument("unknown catalog group '" + name + "'");
  return it->second;
}

TowerSpec tower_from_json(const nlohmann::json& j) {
  TowerSpec spec;
  for (const auto& b : j.at("base")) spec.base.push_back(block_from_json(b));
  // Words are parsed against the presentation built so far, so stages are
  // applied while reading.
  TowerBuilder builder(spec.base);
  for (const auto& sj : j.value("stages", nlohmann::json::array())) {
    const auto& names = builder.current().generator_names;
    if (sj.contains("torus")) {
      const auto& t = sj.at("torus");
      TorusAttach a{t.value("dim", std::size_t{2}), parse_word(t.at("word").get<std::string>(), names)};
      builder.attach(a);
      spec.stages.emplace_back(std::move(a));
    } else if (sj.contains("surface")) {
      const auto& s = sj.at("surface");
      SurfaceAttach a;
      a.genus = s.value("genus", std::size_t{1});
      a.boundaries = s.value("boundaries", std::size_t{1});
      for (const auto& w : s.at("words")) a.boundary_words.push_back(parse_word(w.get<std::string>(), names));
      a.asserted_retraction = s.value("asserted_retraction", false);
      builder.attach(a);
      spec.stages.emplace_back(std::move(a));
    } else {
      throw std::invalid_argument("tower stage must be 'torus' or 'surface'");
    }
  }
  return spec;
}

}  // namespace gradlab
