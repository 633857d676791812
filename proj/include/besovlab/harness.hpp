#pragma once

// Experiment drivers behind the command-line tool.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

#include "besovlab/dynamics.hpp"
#include "besovlab/report.hpp"
#include "besovlab/sequences.hpp"

namespace besovlab {

struct GridSpec {
  Index num_points = Index{1} << 16;
  double half_length = 32.0 * kPi;

  Grid make() const { return Grid(half_length, num_points); }
};

struct ExperimentConfig {
  Model model = Model::kCamassaHolm;
  std::vector<int> n_values{5, 6, 7, 8};
  std::vector<double> t_values{0.02, 0.05, 0.1};
  GridSpec grid;
  /// final_time defaults to max(t_values); sample_times are filled per run.
  SolverConfig solver;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;

  // Taylor-remainder ladder.
  double t_min = 1e-3;
  double t_max = 1e-1;
  int points = 8;
  int taylor_n = 6;

  void validate() const;
};

/// Reads fields mirroring ExperimentConfig; absent fields keep base values.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& config);

/// Largest T (bisected) for which u0 evolves without BlowUp and with H1
/// drift < 1e-6, starting from t_hi; returns 0.8 * T_found.
double discover_t0(const Field& u0, Model model, const SolverConfig& solver, double t_hi);

/// Lower-bound thresholds: D_n(t)/t >= kLowerBoundFraction * M, and
/// D_n(t) / (t ||lead term||) within [kRatioLow, kRatioHigh].
inline constexpr double kLowerBoundFraction = 0.1;
inline constexpr double kRatioLow = 0.5;
inline constexpr double kRatioHigh = 2.0;
inline constexpr double kDominanceFactor = 4.0;
inline constexpr double kH1DriftTolerance = 1e-6;

ExperimentReport run_nonuniform(const ExperimentConfig& config);
ExperimentReport run_taylor_check(const ExperimentConfig& config);
ExperimentReport run_lemma31(const ExperimentConfig& config);

/// Smooth decaying datum used by the Taylor check and solver tests.
Field smooth_profile(const Grid& grid);

struct ValidationOptions {
  std::uint64_t seed = 1;
  /// Grid for the bump and sequence invariants.
  GridSpec grid;
  /// Number of random fields / pairs per property.
  int samples = 1000;
  /// Sampled frequencies for the partition-of-unity check.
  int frequency_samples = 1000000;
  /// Fault injection: scales the ring function.
  double ring_gain = 1.0;
  std::vector<int> n_values{4, 5, 6, 7, 8};
};

ExperimentReport run_validation_suite(const ValidationOptions& options);

}  // namespace besovlab
