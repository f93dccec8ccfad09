#include "gradlab/experiment.hpp"

#include <exception>
#include <stdexcept>

#include "gradlab/cosets.hpp"
#include "gradlab/error.hpp"
#include "gradlab/homology.hpp"

namespace gradlab {

namespace {

std::int64_t signed_of(std::uint64_t x) {
  if (x > static_cast<std::uint64_t>(INT64_MAX)) throw ResourceExhausted("count exceeds 63 bits");
  return static_cast<std::int64_t>(x);
}

std::uint64_t vv_at(const VolumeVector& v, std::size_t k) { return k < v.size() ? v[k] : 0; }

struct LevelResult {
  std::vector<std::vector<std::size_t>> betti;         // per field
  std::vector<std::vector<std::uint64_t>> kunneth;     // per field, empty without factors
  std::optional<VolumeVector> volume;
  std::optional<CoverData> cover;
};

struct Setup {
  ResolvedGroup group;
  BuiltChain built;
};

Setup prepare(const ExperimentConfig& cfg) {
  Setup s{resolve_group(cfg.group, cfg.max_cosets), {}};
  s.built = build_chain(s.group, cfg.chain, cfg.max_cosets);
  return s;
}

std::vector<std::size_t> level_betti(const Presentation& p, const ChainLevel& level, const FieldSpec& f,
                                     std::size_t max_cosets) {
  return betti(covering_complex(regular_table(p, level.images, max_cosets)), f);
}

/// Runs `body(n)` for every level in parallel and rethrows the first error.
template <class F>
void parallel_levels(std::size_t count, F body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t n = 0; n < count; ++n) {
    try {
      body(n);
    } catch (...) {
#pragma omp critical(gradlab_level_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<LevelResult> compute_levels(const ExperimentConfig& cfg, const Setup& s, bool homology, bool kunneth) {
  const Chain& chain = s.built.chain;
  std::vector<LevelResult> out(chain.levels.size());
  parallel_levels(chain.levels.size(), [&](std::size_t n) {
    const ChainLevel& level = chain.levels[n];
    LevelResult& r = out[n];
    if (s.group.graph) {
      r.cover = cover_data(*s.group.graph, *s.group.fundamental, level.images, level.degree);
      r.volume = subgroup_volume_vector(*s.group.graph, *r.cover);
    }
    if (!homology) return;
    r.betti = betti(covering_complex(regular_table(s.group.presentation, level.images, cfg.max_cosets)), cfg.fields);
    if (kunneth && !s.built.factors.empty()) {
      for (const FieldSpec& f : cfg.fields) {
        std::vector<std::vector<std::uint64_t>> factor_betti;
        for (std::size_t j = 0; j < s.built.factors.size(); ++j) {
          const Chain& fc = s.built.factors[j];
          const auto b = level_betti(fc.group, fc.levels[n], f, cfg.max_cosets);
          factor_betti.emplace_back(b.begin(), b.end());
        }
        r.kunneth.push_back(kunneth_betti(factor_betti));
      }
    }
  });
  return out;
}

void check_kunneth(const GradientRow& row, const std::vector<std::size_t>& complex_betti, bool aspherical) {
  const auto& k = row.kunneth_betti;
  for (std::size_t j = 0; j < complex_betti.size() && j <= 2; ++j) {
    const std::uint64_t kj = j < k.size() ? k[j] : 0;
    const bool ok = (j < 2 || aspherical) ? complex_betti[j] == kj : complex_betti[j] >= kj;
    if (!ok) {
      throw InvariantViolation("Künneth and covering-complex b" + std::to_string(j) + " disagree at level " +
                               std::to_string(row.level) + " over " + row.field);
    }
  }
}

void check_sandwich(const GradientRow& row) {
  if (row.d_lower && row.d_upper && *row.d_lower > *row.d_upper) {
    throw InvariantViolation("rank sandwich fails at level " + std::to_string(row.level) + ": d_lower " +
                             std::to_string(*row.d_lower) + " > d_upper " + std::to_string(*row.d_upper));
  }
  if (row.def_lower && row.def_upper && *row.def_lower > *row.def_upper) {
    throw InvariantViolation("deficiency sandwich fails at level " + std::to_string(row.level) + ": def_lower " +
                             std::to_string(*row.def_lower) + " > def_upper " + std::to_string(*row.def_upper));
  }
}

}  // namespace

std::optional<double> GradientRow::vol2_ratio() const {
  if (!r2) return std::nullopt;
  return static_cast<double>(*r2) / static_cast<double>(index);
}

GradientTable run_experiment(const ExperimentConfig& cfg, Mode mode) {
  if (mode == Mode::MvCheck) throw std::invalid_argument("use run_mv_check for mvcheck");
  if (mode == Mode::Volume && cfg.volume_degree < 2) {
    throw std::invalid_argument("volume gradients are only reported for k >= 2");
  }
  if (mode == Mode::Deficiency && cfg.max_degree < 2) {
    throw std::invalid_argument("deficiency run needs max_degree 2 for b2");
  }
  const Setup s = prepare(cfg);
  const ResolvedGroup& g = s.group;
  const Presentation& p = g.presentation;
  if (mode == Mode::Volume && !g.graph) throw std::invalid_argument("volume run needs a graph-of-groups group");
  if (mode == Mode::Deficiency && !p.aspherical && !g.graph) {
    throw std::invalid_argument("deficiency run needs an aspherical presentation or a graph of groups");
  }

  const bool homology = mode != Mode::Volume;
  const auto levels = compute_levels(cfg, s, homology, mode == Mode::Homology);

  GradientTable t;
  t.mode = mode_name(mode);
  t.config = cfg.raw;
  t.volume_degree = cfg.volume_degree;
  t.b2_kind = p.aspherical ? "exact" : "upper bound (Hopf)";
  for (const ChainLevel& level : s.built.chain.levels) t.provenance.push_back(level.provenance);
  for (const auto& note : s.built.chain.notes) t.provenance.push_back(note);
  for (std::size_t i = 0; i < g.asserted_retractions.size(); ++i) {
    t.provenance.push_back("surface stage " + std::to_string(i) + " asserted_retraction=" +
                           (g.asserted_retractions[i] ? "true" : "false"));
  }

  const auto gens = static_cast<std::uint64_t>(p.num_generators());
  const auto rels = static_cast<std::uint64_t>(p.num_relators());
  for (std::size_t n = 0; n < s.built.chain.levels.size(); ++n) {
    const ChainLevel& level = s.built.chain.levels[n];
    const LevelResult& r = levels[n];
    const std::uint64_t k = level.index;

    GradientRow base;
    base.level = n;
    base.index = k;
    if (g.euler) {
      base.target_rg = -*g.euler;
      base.target_dg = *g.euler;
    }
    if (r.volume) {
      const VolumeVector& v = *r.volume;
      base.volume_vector = v;
      base.r2 = vv_at(v, 2);
      base.d_upper = signed_of(vv_at(v, 1)) - signed_of(vv_at(v, 0)) + 1;
      base.def_upper = signed_of(vv_at(v, 2)) - signed_of(vv_at(v, 1)) + signed_of(vv_at(v, 0)) - 1;
    } else {
      // Cells of the covering complex: k vertices, k|X| edges, k|R| faces.
      base.d_upper = signed_of(k * gens) - signed_of(k) + 1;
      base.def_upper = signed_of(k * rels) - signed_of(k * gens) + signed_of(k) - 1;
    }

    if (!homology) {
      t.rows.push_back(base);
      continue;
    }
    for (std::size_t f = 0; f < cfg.fields.size(); ++f) {
      GradientRow row = base;
      row.field = cfg.fields[f].name();
      const auto& b = r.betti[f];
      row.b0 = b.at(0);
      row.b1 = b.at(1);
      if (cfg.max_degree >= 2) row.b2 = b.at(2);
      row.d_lower = signed_of(b.at(1));
      if (p.aspherical && cfg.max_degree >= 2) row.def_lower = signed_of(b.at(2)) - signed_of(b.at(1));
      if (!r.kunneth.empty()) {
        row.kunneth_betti = r.kunneth[f];
        check_kunneth(row, b, p.aspherical);
      }
      if (mode == Mode::Rank) {
        row.def_lower.reset();
        row.def_upper.reset();
        row.target_dg.reset();
      }
      check_sandwich(row);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

GradientTable run_rank_gradient(const ExperimentConfig& cfg) { return run_experiment(cfg, Mode::Rank); }
GradientTable run_deficiency_gradient(const ExperimentConfig& cfg) { return run_experiment(cfg, Mode::Deficiency); }
GradientTable run_homology_gradient(const ExperimentConfig& cfg) { return run_experiment(cfg, Mode::Homology); }

GradientTable run_volume_gradient(const ExperimentConfig& cfg, std::size_t k) {
  ExperimentConfig c = cfg;
  c.volume_degree = k;
  return run_experiment(c, Mode::Volume);
}

MvReport run_mv_check(const ExperimentConfig& cfg) {
  const Setup s = prepare(cfg);
  const ResolvedGroup& g = s.group;
  if (!g.graph) throw std::invalid_argument("mvcheck needs a graph-of-groups group");
  const auto levels = compute_levels(cfg, s, true, false);
  MvReport report;
  for (const ChainLevel& level : s.built.chain.levels) report.provenance.push_back(level.provenance);
  const std::size_t top = g.presentation.aspherical ? 2 : 1;
  if (top == 1) report.provenance.push_back("degree 2 skipped: presentation not aspherical");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    for (std::size_t f = 0; f < cfg.fields.size(); ++f) {
      for (std::size_t j = 1; j <= top; ++j) {
        MvRow row;
        row.level = n;
        row.index = s.built.chain.levels[n].index;
        row.field = cfg.fields[f].name();
        row.degree = j;
        row.lhs = levels[n].betti[f].at(j);
        row.rhs = mayer_vietoris_bound(*g.graph, *levels[n].cover, j);
        if (!row.holds()) {
          throw InvariantViolation("Mayer-Vietoris bound fails at level " + std::to_string(n) + ", degree " +
                                   std::to_string(j) + ": " + std::to_string(row.lhs) + " > " +
                                   std::to_string(row.rhs));
        }
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

}  // namespace gradlab
