#include <fstream>
#include <stdexcept>

#include "gradlab/cosets.hpp"
#include "gradlab/experiment.hpp"
#include "gradlab/towers.hpp"

namespace gradlab {

namespace {

ResolvedGroup from_catalog(const std::string& name, std::size_t max_cosets);

ResolvedGroup from_graph(std::string label, GraphOfGroups g) {
  ResolvedGroup r;
  r.label = std::move(label);
  r.fundamental = fundamental_presentation(g);
  r.presentation = r.fundamental->presentation;
  r.euler = euler_characteristic(g);
  r.graph = std::move(g);
  return r;
}

ResolvedGroup product_of(std::vector<ResolvedGroup> factors) {
  if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
  ResolvedGroup r;
  std::vector<Presentation> ps;
  bool aspherical = true;
  std::size_t dimension = 0;
  long long euler = 1;
  bool euler_known = true;
  for (const ResolvedGroup& f : factors) {
    ps.push_back(f.presentation);
    aspherical = aspherical && f.presentation.aspherical;
    dimension += f.presentation.relators.empty() ? 1 : 2;
    euler_known = euler_known && f.euler.has_value();
    if (f.euler) euler *= *f.euler;
    r.label += (r.label.empty() ? "" : "x") + f.label;
  }
  r.presentation = direct_product(ps, aspherical && dimension <= 2);
  if (euler_known) r.euler = euler;
  r.factors = std::move(factors);
  return r;
}

ResolvedGroup from_catalog(const std::string& name, std::size_t max_cosets) {
  const CatalogEntry& e = catalog_entry(name);
  if (!e.product_factors.empty()) {
    std::vector<ResolvedGroup> factors;
    for (const auto& f : e.product_factors) factors.push_back(from_catalog(f, max_cosets));
    ResolvedGroup r = product_of(std::move(factors));
    r.label = name;
    r.presentation = e.presentation;
    r.euler = e.euler;
    return r;
  }
  ResolvedGroup r = from_graph(name, *e.graph);
  r.presentation = e.presentation;
  return r;
}

std::vector<long long> int_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::invalid_argument(std::string("chain spec needs an array '") + key + "'");
  }
  return j.at(key).get<std::vector<long long>>();
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "rank") return Mode::Rank;
  if (name == "deficiency") return Mode::Deficiency;
  if (name == "volume") return Mode::Volume;
  if (name == "homology") return Mode::Homology;
  if (name == "mvcheck") return Mode::MvCheck;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Rank:
      return "rank";
    case Mode::Deficiency:
      return "deficiency";
    case Mode::Volume:
      return "volume";
    case Mode::Homology:
      return "homology";
    case Mode::MvCheck:
      return "mvcheck";
  }
  return {};
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.raw = j;
  if (!j.contains("group")) throw std::invalid_argument("config needs a 'group'");
  if (!j.contains("chain")) throw std::invalid_argument("config needs a 'chain'");
  cfg.group = j.at("group");
  cfg.chain = j.at("chain");
  if (j.contains("fields")) {
    cfg.fields.clear();
    for (const auto& f : j.at("fields")) cfg.fields.push_back(FieldSpec::parse(f.get<std::string>()));
    if (cfg.fields.empty()) throw std::invalid_argument("fields list is empty");
  }
  cfg.max_degree = j.value("max_degree", cfg.max_degree);
  if (cfg.max_degree < 1 || cfg.max_degree > 2) throw std::invalid_argument("max_degree must be 1 or 2");
  cfg.volume_degree = j.value("volume_degree", cfg.volume_degree);
  cfg.max_cosets = j.value("max_cosets", cfg.max_cosets);
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  cfg.format = j.value("format", cfg.format);
  if (cfg.format != "csv" && cfg.format != "json") throw std::invalid_argument("format must be csv or json");
  if (cfg.group.contains("catalog")) catalog_entry(cfg.group.at("catalog").get<std::string>());
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

ResolvedGroup resolve_group(const nlohmann::json& spec, std::size_t max_cosets) {
  if (spec.contains("catalog")) return from_catalog(spec.at("catalog").get<std::string>(), max_cosets);
  if (spec.contains("presentation")) {
    const auto& pj = spec.at("presentation");
    ResolvedGroup r;
    r.label = pj.value("name", "presentation");
    r.presentation = make_presentation(pj.at("generators").get<std::vector<std::string>>(),
                                       pj.value("relators", std::vector<std::string>{}), pj.value("aspherical", false));
    if (r.presentation.aspherical) {
      r.euler = 1 - static_cast<long long>(r.presentation.num_generators()) +
                static_cast<long long>(r.presentation.num_relators());
    }
    return r;
  }
  if (spec.contains("graph")) return from_graph("graph", graph_from_json(spec.at("graph")));
  if (spec.contains("tower")) {
    Tower t = build_tower(tower_from_json(spec.at("tower")));
    ResolvedGroup r = from_graph("tower", std::move(t.graph));
    r.euler = t.euler;
    r.asserted_retractions = t.asserted_retractions;
    return r;
  }
  if (spec.contains("product")) {
    std::vector<ResolvedGroup> factors;
    for (const auto& f : spec.at("product")) factors.push_back(resolve_group(f, max_cosets));
    return product_of(std::move(factors));
  }
  if (spec.contains("fiber")) {
    const auto& fj = spec.at("fiber");
    std::vector<ResolvedGroup> factors;
    for (const auto& f : fj.at("product")) factors.push_back(resolve_group(f, max_cosets));
    ResolvedGroup ambient = product_of(std::move(factors));
    std::vector<Word> words;
    for (const auto& w : fj.at("words")) words.push_back(parse_word(w.get<std::string>(), ambient.presentation.generator_names));
    const CosetTable t = todd_coxeter(ambient.presentation, words, max_cosets);
    SubgroupPresentation rs = reidemeister_schreier(t);
    ResolvedGroup r;
    r.label = "fiber(" + ambient.label + ")";
    r.presentation = std::move(rs.presentation);
    r.presentation.aspherical = ambient.presentation.aspherical;
    if (ambient.euler) r.euler = static_cast<long long>(t.num_cosets()) * *ambient.euler;
    r.ambient_words = std::move(rs.generator_words);
    r.ambient.push_back(std::move(ambient));
    return r;
  }
  throw std::invalid_argument("group spec needs one of catalog, presentation, graph, tower, product, fiber");
}

BuiltChain build_chain(const ResolvedGroup& g, const nlohmann::json& spec, std::size_t max_cosets) {
  const std::string type = spec.at("type").get<std::string>();
  BuiltChain out;
  if (type == "core") {
    std::vector<std::size_t> bounds;
    for (long long b : int_list(spec, "bounds")) {
      if (b < 1) throw std::invalid_argument("core chain bounds must be positive");
      bounds.push_back(static_cast<std::size_t>(b));
    }
    out.chain = core_chain(g.presentation, bounds, max_cosets);
  } else if (type == "homology") {
    out.chain = homology_cover_chain(g.presentation, int_list(spec, "moduli"));
  } else if (type == "product") {
    if (g.factors.empty()) throw std::invalid_argument("product chain needs a product group");
    const auto& fs = spec.at("factors");
    if (fs.size() != g.factors.size()) throw std::invalid_argument("one chain spec per product factor required");
    for (std::size_t j = 0; j < g.factors.size(); ++j) {
      out.factors.push_back(build_chain(g.factors[j], fs[j], max_cosets).chain);
    }
    out.chain = product_chain(out.factors);
    out.chain.group = g.presentation;
  } else if (type == "fiber") {
    if (g.ambient.empty()) throw std::invalid_argument("fiber chain needs a fiber group");
    const Chain ambient = build_chain(g.ambient.front(), spec.at("ambient"), max_cosets).chain;
    out.chain = fiber_restrict(ambient, g.ambient_words);
    out.chain.group = g.presentation;
    out.chain.notes.clear();
  } else {
    throw std::invalid_argument("unknown chain type '" + type + "'");
  }
  check_nesting(out.chain);
  return out;
}

}  // namespace gradlab
