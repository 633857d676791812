#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "besovlab/errors.hpp"
#include "besovlab/harness.hpp"

using namespace besovlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("besovlab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, 123456789.0, -0.0625})
    CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("empty report") {
  const fs::path dir = scratch("empty");
  ExperimentReport r;
  r.command = "validate";
  r.experiments.push_back(Experiment{"nothing", {}, {}, {}, {}, {}});
  emit_outputs(r, dir);
  std::ifstream in(dir / "report.json");
  const nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["experiments"][0]["rows"].empty());
  CHECK(j["all_pass"] == true);
  CHECK(j["code_version"] == kCodeVersion);
  CHECK(lines_of(dir / "nothing.csv") == std::vector<std::string>{kCsvHeader});
}

TEST_CASE("one cell gives one row, re-derivable from the JSON") {
  const fs::path dir = scratch("one");
  ExperimentReport r;
  Experiment e;
  e.name = "nonuniform_ch";
  e.rows.push_back({"ch", 6, 0.05, 0.0024874543633600977, 0.04974908726720195, 0.0013042043695751578,
                    1.3492034644469715e-15, false, {{"lead_ratio", 2.107}}});
  e.series["Dn_vs_t_n6"] = {{0.0, 0.0013}, {0.05, 0.0024874543633600977}};
  e.checks.push_back(Check::within("n6_t0.05_lead_ratio", 2.107, 0.5, 2.0));
  r.experiments.push_back(e);
  emit_outputs(r, dir);

  const auto csv = lines_of(dir / "nonuniform_ch.csv");
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == kCsvHeader);
  std::ifstream in(dir / "report.json");
  const nlohmann::json j = nlohmann::json::parse(in);
  const nlohmann::json& row = j["experiments"][0]["rows"][0];
  const auto cells = split(csv[1]);
  REQUIRE(cells.size() == 8);
  CHECK(cells[0] == row["model"].get<std::string>());
  CHECK(std::stoi(cells[1]) == row["n"].get<int>());
  CHECK(std::stod(cells[2]) == row["t"].get<double>());
  CHECK(std::stod(cells[3]) == row["D_n"].get<double>());
  CHECK(std::stod(cells[4]) == row["ratio"].get<double>());
  CHECK(std::stod(cells[5]) == row["g_norm"].get<double>());
  CHECK(std::stod(cells[6]) == row["h1_drift"].get<double>());
  CHECK(cells[7] == row["verdict"].get<std::string>());
  CHECK(j["all_pass"] == false);

  const auto dat = lines_of(dir / "Dn_vs_t_n6.dat");
  REQUIRE(dat.size() == 3);
  CHECK(dat[0].front() == '#');
  CHECK(dat[2] == "0.05 0.0024874543633600977");
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("output errors carry the path") {
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  try {
    emit_outputs(ExperimentReport{}, blocker / "sub");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
  }
}

TEST_CASE("failures list names the experiment") {
  ExperimentReport r;
  r.checks.push_back(Check::at_most("top", 2.0, 1.0));
  Experiment e;
  e.name = "exp";
  e.checks.push_back(Check::at_least("low", 0.0, 1.0));
  e.errors.push_back("n=9: resolution");
  r.experiments.push_back(e);
  CHECK(r.failures() == std::vector<std::string>{"top", "exp/low", "exp/error: n=9: resolution"});
}

TEST_CASE("config from JSON with overrides") {
  const nlohmann::json j = {{"model", "novikov"},
                            {"n_values", {5, 6}},
                            {"t_values", {0.01, 0.02}},
                            {"grid", {{"num_points", 32768}}},
                            {"solver", {{"cfl", 0.2}}},
                            {"taylor", {{"points", 5}}}};
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.model == Model::kNovikov);
  CHECK(c.n_values == std::vector<int>{5, 6});
  CHECK(c.grid.num_points == 32768);
  CHECK(c.grid.half_length == GridSpec{}.half_length);
  CHECK(c.solver.cfl == 0.2);
  CHECK(c.points == 5);
  CHECK_NOTHROW(c.validate());

  const ExperimentConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));

  CHECK_THROWS_AS(config_from_json({{"model", "kdv"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"n_values", "six"}}), ConfigError);

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(load_config(bad), ConfigError);
  CHECK_THROWS_AS(load_config(scratch("missing.json")), IoError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.n_values = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.n_values = {9};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.n_values = {5};
  c.t_values = {0.2};
  c.solver.final_time = 0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.solver.final_time = 0.0;
  c.t_values = {-0.1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("identical data stay at distance zero") {
  const Grid g = GridSpec{}.make();
  const CutoffPair c(g);
  const SequenceTriple s = make_sequences(build_bump(g), 5);
  SolverConfig cfg;
  cfg.final_time = 0.02;
  const Field a = evolve(s.f, Model::kCamassaHolm, cfg).samples.back().u;
  const Field b = evolve(s.f, Model::kCamassaHolm, cfg).samples.back().u;
  CHECK(besov_norm(a - b, {1.5, 2.0, 1.0}, c) == 0.0);
}

TEST_CASE("T0 discovery") {
  const Grid g(8.0 * kPi, 512);
  SolverConfig cfg;
  CHECK(discover_t0(smooth_profile(g), Model::kCamassaHolm, cfg, 0.5) == doctest::Approx(0.4));
  cfg.blowup_threshold = 0.6;
  const Field steep = Field::from_function(g, [](double x) { return -0.5 * std::tanh(x) * std::exp(-0.05 * x * x); });
  const double t0 = discover_t0(steep, Model::kCamassaHolm, cfg, 3.0);
  CHECK(t0 > 0.0);
  CHECK(t0 < 0.8 * 3.0);
  SolverConfig check = cfg;
  check.final_time = t0;
  CHECK_NOTHROW(evolve(steep, Model::kCamassaHolm, check));
}

TEST_CASE("validation suite: green by default, fault injection fails it") {
  ValidationOptions opt;
  opt.samples = 100;
  opt.frequency_samples = 100000;
  const ExperimentReport good = run_validation_suite(opt);
  CHECK_MESSAGE(good.all_pass(), good.failures().size(), " failures");

  opt.ring_gain = 1.01;
  const ExperimentReport bad = run_validation_suite(opt);
  const auto failures = bad.failures();
  CHECK(std::find(failures.begin(), failures.end(), "littlewood_paley/partition_of_unity") != failures.end());
}

TEST_CASE("validation suite: the pass set does not depend on the seed") {
  ValidationOptions opt;
  std::set<std::vector<std::string>> pass_sets;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    opt.seed = seed;
    const ExperimentReport r = run_validation_suite(opt);
    std::vector<std::string> passed;
    for (const Experiment& e : r.experiments)
      for (const Check& c : e.checks)
        if (c.pass) passed.push_back(e.name + "/" + c.name);
    pass_sets.insert(passed);
  }
  CHECK(pass_sets.size() == 1);
}

}
