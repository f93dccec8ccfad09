#include <omp.h>

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "gradlab/error.hpp"
#include "gradlab/experiment.hpp"
#include "gradlab/report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitInvariant = 3;

struct Options {
  std::string config;
  std::vector<std::string> fields;
  std::string out;
  std::string format;
  int jobs = 0;
  std::size_t max_cosets = 0;
};

int run(const std::string& command, const Options& opt) {
  if (command == "selftest") {
    const auto results = gradlab::acceptance::run_all(std::cout);
    return gradlab::acceptance::all_passed(results) ? 0 : kExitInvariant;
  }
  gradlab::ExperimentConfig cfg = gradlab::load_config(opt.config);
  if (!opt.fields.empty()) {
    cfg.fields.clear();
    for (const auto& f : opt.fields) cfg.fields.push_back(gradlab::FieldSpec::parse(f));
  }
  if (!opt.format.empty()) cfg.format = opt.format;
  if (!opt.out.empty()) cfg.out = opt.out;
  if (opt.max_cosets > 0) cfg.max_cosets = opt.max_cosets;

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (cfg.out) {
    file.open(*cfg.out);
    if (!file) throw std::runtime_error("cannot open '" + *cfg.out + "' for writing");
    os = &file;
  }
  const gradlab::Mode mode = gradlab::parse_mode(command);
  if (mode == gradlab::Mode::MvCheck) {
    gradlab::emit_mv_report(gradlab::run_mv_check(cfg), cfg.format, *os);
  } else {
    gradlab::emit_report(gradlab::run_experiment(cfg, mode), cfg.format, *os);
  }
  os->flush();
  if (!*os) throw std::runtime_error("writing the report failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient experiments on residual chains of finitely presented groups"};
  app.require_subcommand(1);
  Options opt;
  std::vector<CLI::App*> commands;
  for (const char* name : {"rank", "deficiency", "volume", "homology", "mvcheck", "selftest"}) {
    CLI::App* sub = app.add_subcommand(name);
    auto* config = sub->add_option("--config", opt.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    if (std::string(name) != "selftest") config->required();
    sub->add_option("--field", opt.fields, "q or gf:<p>; repeatable, overrides the config");
    sub->add_option("--out", opt.out, "Output path (default stdout)");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", opt.jobs, "OpenMP threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-cosets", opt.max_cosets, "Cap on coset tables and quotient orders")
        ->check(CLI::PositiveNumber);
    commands.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (opt.jobs > 0) omp_set_num_threads(opt.jobs);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const gradlab::ResourceExhausted& e) {
    std::cerr << "resource exhausted: " << e.what() << '\n';
    return kExitResource;
  } catch (const gradlab::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
