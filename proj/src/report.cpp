#include "besovlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "besovlab/errors.hpp"

namespace besovlab {
namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace

const char* to_string(Check::Kind kind) {
  switch (kind) {
    case Check::Kind::kAtMost: return "<=";
    case Check::Kind::kAtLeast: return ">=";
    case Check::Kind::kWithin: return "within";
  }
  return "?";
}

bool ExperimentReport::all_pass() const { return failures().empty(); }

std::vector<std::string> ExperimentReport::failures() const {
  std::vector<std::string> out;
  for (const Check& c : checks)
    if (!c.pass) out.push_back(c.name);
  for (const Experiment& e : experiments) {
    for (const Check& c : e.checks)
      if (!c.pass) out.push_back(e.name + "/" + c.name);
    for (const std::string& err : e.errors) out.push_back(e.name + "/error: " + err);
  }
  return out;
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j = {{"name", c.name}, {"measured", number(c.measured)}, {"comparison", to_string(c.kind)},
                      {"threshold", number(c.threshold)}, {"pass", c.pass}};
  if (c.kind == Check::Kind::kWithin) j["upper"] = number(c.upper);
  return j;
}

nlohmann::json to_json(const ExperimentRow& r) {
  nlohmann::json extra = nlohmann::json::object();
  for (const auto& [k, v] : r.extra) extra[k] = number(v);
  return {{"model", r.model}, {"n", r.n},         {"t", number(r.t)},
          {"D_n", number(r.d_n)}, {"ratio", number(r.ratio)}, {"g_norm", number(r.g_norm)},
          {"h1_drift", number(r.h1_drift)}, {"verdict", r.verdict ? "pass" : "fail"}, {"extra", extra}};
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["code_version"] = kCodeVersion;
  j["config"] = report.config;
  j["all_pass"] = report.all_pass();
  nlohmann::json scalars = nlohmann::json::object();
  for (const auto& [k, v] : report.scalars) scalars[k] = number(v);
  j["scalars"] = scalars;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : report.checks) j["checks"].push_back(to_json(c));
  j["experiments"] = nlohmann::json::array();
  for (const Experiment& e : report.experiments) {
    nlohmann::json je;
    je["name"] = e.name;
    je["rows"] = nlohmann::json::array();
    for (const ExperimentRow& r : e.rows) je["rows"].push_back(to_json(r));
    nlohmann::json es = nlohmann::json::object();
    for (const auto& [k, v] : e.scalars) es[k] = number(v);
    je["scalars"] = es;
    je["checks"] = nlohmann::json::array();
    for (const Check& c : e.checks) je["checks"].push_back(to_json(c));
    je["errors"] = e.errors;
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [stem, pts] : e.series) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [a, b] : pts) arr.push_back({number(a), number(b)});
      series[stem] = arr;
    }
    je["series"] = series;
    j["experiments"].push_back(je);
  }
  return j;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_line(const ExperimentRow& r) {
  std::ostringstream os;
  os << r.model << ',' << r.n << ',' << format_number(r.t) << ',' << format_number(r.d_n) << ','
     << format_number(r.ratio) << ',' << format_number(r.g_norm) << ',' << format_number(r.h1_drift) << ','
     << (r.verdict ? "pass" : "fail");
  return os.str();
}

void emit_outputs(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  write_atomically(dir / "report.json", to_json(report).dump(2) + "\n");
  for (const Experiment& e : report.experiments) {
    std::string csv = std::string(kCsvHeader) + "\n";
    for (const ExperimentRow& r : e.rows) csv += csv_line(r) + "\n";
    write_atomically(dir / (e.name + ".csv"), csv);
    for (const auto& [stem, pts] : e.series) {
      std::string dat = "# " + stem + "\n";
      for (const auto& [a, b] : pts) dat += format_number(a) + " " + format_number(b) + "\n";
      write_atomically(dir / (stem + ".dat"), dat);
    }
  }
}

}  // namespace besovlab
