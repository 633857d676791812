// besovlab: non-uniform dependence experiments for the Camassa-Holm and
// Novikov equations in B^{3/2}_{2,1}.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "besovlab/harness.hpp"

using namespace besovlab;

namespace {

// Accepts plain numbers and multiples of pi ("32pi", "32*pi", "pi").
double parse_length(std::string text) {
  for (const char* suffix : {"*pi", "pi"}) {
    const std::string s(suffix);
    if (text.size() >= s.size() && text.compare(text.size() - s.size(), s.size(), s) == 0) {
      text.erase(text.size() - s.size());
      return (text.empty() ? 1.0 : std::stod(text)) * kPi;
    }
  }
  return std::stod(text);
}

struct Common {
  std::string config_path;
  std::optional<Index> grid_n;
  std::optional<std::string> grid_l;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--config", c.config_path, "JSON file with ExperimentConfig fields")->check(CLI::ExistingFile);
  cmd->add_option("--grid-n", c.grid_n, "number of grid points (even)");
  cmd->add_option("--grid-l", c.grid_l, "half period L, e.g. 100.5 or 32pi");
  if (with_out) cmd->add_option("--out", c.out, "output directory");
}

ExperimentConfig base_config(const Common& c) {
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  if (c.grid_n) cfg.grid.num_points = *c.grid_n;
  if (c.grid_l) cfg.grid.half_length = parse_length(*c.grid_l);
  if (c.out) cfg.output_dir = *c.out;
  return cfg;
}

std::vector<int> n_range(int lo, int hi) {
  if (hi < lo) throw ConfigError("--n-max must be >= --n-min");
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

int finish(const ExperimentReport& report, const std::filesystem::path& out) {
  emit_outputs(report, out);
  int failed = 0;
  auto print = [&](const std::string& prefix, const Check& c) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << prefix << c.name << "  measured=" << format_number(c.measured)
              << ' ' << to_string(c.kind) << ' ' << format_number(c.threshold);
    if (c.kind == Check::Kind::kWithin) std::cout << ".." << format_number(c.upper);
    std::cout << '\n';
    failed += !c.pass;
  };
  for (const Check& c : report.checks) print("", c);
  for (const Experiment& e : report.experiments) {
    for (const Check& c : e.checks) print(e.name + "/", c);
    for (const std::string& err : e.errors) std::cout << "ERROR " << e.name << ": " << err << '\n';
  }
  const bool ok = report.all_pass();
  std::cout << (ok ? "all checks passed" : std::to_string(report.failures().size()) + " failures") << "; wrote "
            << out.string() << '\n';
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camassa-Holm / Novikov non-uniform dependence lab"};
  app.set_version_flag("--version", kCodeVersion);
  app.require_subcommand(1);

  Common validate_opts;
  std::optional<std::uint64_t> seed;
  int samples = 1000;
  double ring_gain = 1.0;
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  add_common(validate, validate_opts);
  validate->add_option("--seed", seed, "seed for randomized properties");
  validate->add_option("--samples", samples, "random fields per property")->check(CLI::PositiveNumber);
  validate->add_option("--ring-gain", ring_gain, "scale the ring cutoff (fault injection)");

  Common lemma_opts;
  int n_min = 4, n_max = 8;
  auto* lemma = app.add_subcommand("lemma31", "scalings and lower-bound limits of the test sequences");
  add_common(lemma, lemma_opts);
  lemma->add_option("--n-min", n_min);
  lemma->add_option("--n-max", n_max);

  Common nonuni_opts;
  std::optional<std::string> model_name;
  std::optional<int> nu_min, nu_max;
  std::optional<std::vector<double>> times;
  std::optional<double> cfl;
  auto* nonuni = app.add_subcommand("nonuniform", "distance between solutions from nearby data");
  add_common(nonuni, nonuni_opts);
  nonuni->add_option("--model", model_name, "ch|novikov");
  nonuni->add_option("--n-min", nu_min);
  nonuni->add_option("--n-max", nu_max);
  nonuni->add_option("--t", times, "comma-separated sample times")->delimiter(',');
  nonuni->add_option("--cfl", cfl);

  Common taylor_opts;
  std::optional<std::string> taylor_model;
  std::optional<double> t_min, t_max;
  std::optional<int> points;
  auto* taylor = app.add_subcommand("taylor", "second-order Taylor remainder of the solution map");
  add_common(taylor, taylor_opts);
  taylor->add_option("--model", taylor_model, "ch|novikov");
  taylor->add_option("--t-min", t_min);
  taylor->add_option("--t-max", t_max);
  taylor->add_option("--points", points);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      ExperimentConfig cfg = base_config(validate_opts);
      ValidationOptions opt;
      opt.seed = seed ? *seed : cfg.seed;
      opt.grid = cfg.grid;
      opt.samples = samples;
      opt.ring_gain = ring_gain;
      if (!validate_opts.out) cfg.output_dir = "out/validate";
      return finish(run_validation_suite(opt), cfg.output_dir);
    }
    if (*lemma) {
      ExperimentConfig cfg = base_config(lemma_opts);
      cfg.n_values = n_range(n_min, n_max);
      return finish(run_lemma31(cfg), cfg.output_dir);
    }
    if (*nonuni) {
      ExperimentConfig cfg = base_config(nonuni_opts);
      if (model_name) cfg.model = parse_model(*model_name);
      if (nu_min || nu_max) {
        const int lo = nu_min.value_or(cfg.n_values.front());
        cfg.n_values = n_range(lo, nu_max.value_or(lo));
      }
      if (times) cfg.t_values = *times;
      if (cfl) cfg.solver.cfl = *cfl;
      return finish(run_nonuniform(cfg), cfg.output_dir);
    }
    if (*taylor) {
      ExperimentConfig cfg = base_config(taylor_opts);
      if (taylor_model) cfg.model = parse_model(*taylor_model);
      if (t_min) cfg.t_min = *t_min;
      if (t_max) cfg.t_max = *t_max;
      if (points) cfg.points = *points;
      return finish(run_taylor_check(cfg), cfg.output_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return EXIT_FAILURE;
}
