#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "besovlab/check.hpp"

namespace besovlab {

inline constexpr const char* kCodeVersion = "besovlab 0.1.0";

/// Header of every per-experiment CSV file.
inline constexpr const char* kCsvHeader = "model,n,t,D_n,ratio,g_norm,h1_drift,verdict";

struct ExperimentRow {
  std::string model;
  int n = 0;
  double t = 0.0;
  double d_n = 0.0;
  double ratio = 0.0;
  double g_norm = 0.0;
  double h1_drift = 0.0;
  bool verdict = false;
  std::map<std::string, double> extra;
};

using Series = std::vector<std::pair<double, double>>;

struct Experiment {
  std::string name;
  std::vector<ExperimentRow> rows;
  std::map<std::string, double> scalars;
  /// File stem -> two-column data written as <stem>.dat.
  std::map<std::string, Series> series;
  std::vector<Check> checks;
  /// Per-run failures (blow-up, resolution) that did not abort the batch.
  std::vector<std::string> errors;
};

struct ExperimentReport {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, double> scalars;
  std::vector<Experiment> experiments;
  std::vector<Check> checks;

  bool all_pass() const;
  /// Every failing check as "experiment/check".
  std::vector<std::string> failures() const;
};

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const ExperimentRow& row);
nlohmann::json to_json(const ExperimentReport& report);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

std::string csv_line(const ExperimentRow& row);

/// Writes report.json, <experiment>.csv and <series>.dat into dir. Each file
/// is written to a temporary name and renamed into place.
void emit_outputs(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace besovlab
