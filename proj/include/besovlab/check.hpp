#pragma once

#include <string>

namespace besovlab {

/// A measured quantity compared against a fixed threshold.
struct Check {
  enum class Kind { kAtMost, kAtLeast, kWithin };

  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  double upper = 0.0;  // only for kWithin: threshold <= measured <= upper
  Kind kind = Kind::kAtMost;
  bool pass = false;

  static Check at_most(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, 0.0, Kind::kAtMost, measured <= threshold};
  }
  static Check at_least(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, 0.0, Kind::kAtLeast, measured >= threshold};
  }
  static Check within(std::string name, double measured, double lo, double hi) {
    return {std::move(name), measured, lo, hi, Kind::kWithin, measured >= lo && measured <= hi};
  }
  /// Boolean outcome recorded as measured = 1 (true) against threshold 1.
  static Check holds(std::string name, bool ok) { return at_least(std::move(name), ok ? 1.0 : 0.0, 1.0); }
};

const char* to_string(Check::Kind kind);

}  // namespace besovlab
