#include <algorithm>
#include <cmath>
#include <fstream>

#include "besovlab/harness.hpp"

namespace besovlab {

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw ConfigError("n_values must not be empty");
  const Grid g = grid.make();
  for (int n : n_values)
    if (n < 1 || modulation_frequency(n) + 0.5 > 2.0 / 3.0 * g.xi_max())
      throw ConfigError("n=" + std::to_string(n) + " is not resolved by the grid (xi_max=" +
                        std::to_string(g.xi_max()) + ")");
  for (double t : t_values)
    if (!(t > 0.0)) throw ConfigError("t_values must be positive");
  if (solver.final_time > 0.0)
    for (double t : t_values)
      if (t > solver.final_time) throw ConfigError("t_values exceed solver.final_time");
  if (!(t_min > 0.0 && t_max > t_min) || points < 2) throw ConfigError("invalid Taylor ladder");
  SolverConfig s = solver;
  s.final_time = std::max(s.final_time, 0.0);
  s.sample_times.clear();
  s.validate();
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
  try {
    if (j.contains("model")) c.model = parse_model(j.at("model").get<std::string>());
    if (j.contains("n_values")) c.n_values = j.at("n_values").get<std::vector<int>>();
    if (j.contains("t_values")) c.t_values = j.at("t_values").get<std::vector<double>>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("num_points")) c.grid.num_points = g.at("num_points").get<Index>();
      if (g.contains("half_length")) c.grid.half_length = g.at("half_length").get<double>();
    }
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      if (s.contains("final_time")) c.solver.final_time = s.at("final_time").get<double>();
      if (s.contains("cfl")) c.solver.cfl = s.at("cfl").get<double>();
      if (s.contains("dt_max")) c.solver.dt_max = s.at("dt_max").get<double>();
      if (s.contains("blowup_threshold")) c.solver.blowup_threshold = s.at("blowup_threshold").get<double>();
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("taylor")) {
      const auto& t = j.at("taylor");
      if (t.contains("t_min")) c.t_min = t.at("t_min").get<double>();
      if (t.contains("t_max")) c.t_max = t.at("t_max").get<double>();
      if (t.contains("points")) c.points = t.at("points").get<int>();
      if (t.contains("n")) c.taylor_n = t.at("n").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {
      {"model", std::string(to_string(c.model))},
      {"n_values", c.n_values},
      {"t_values", c.t_values},
      {"grid", {{"num_points", c.grid.num_points}, {"half_length", c.grid.half_length}}},
      {"solver",
       {{"final_time", c.solver.final_time},
        {"cfl", c.solver.cfl},
        {"dt_max", c.solver.dt_max},
        {"blowup_threshold", c.solver.blowup_threshold}}},
      {"output_dir", c.output_dir.string()},
      {"seed", c.seed},
      {"taylor", {{"t_min", c.t_min}, {"t_max", c.t_max}, {"points", c.points}, {"n", c.taylor_n}}},
  };
}

}  // namespace besovlab
