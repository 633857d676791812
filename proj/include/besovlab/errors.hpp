#pragma once

#include <stdexcept>
#include <string>

namespace besovlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field sample or intermediate result is NaN or infinite.
class InvalidField : public Error {
 public:
  using Error::Error;
};

/// Coefficients or a multiplier that cannot represent a real function.
class NonRealSpectrum : public Error {
 public:
  using Error::Error;
};

/// The slope of the solution exceeded the configured threshold.
class BlowUp : public Error {
 public:
  BlowUp(double time, double slope)
      : Error("blow-up at t=" + std::to_string(time) +
              " (|u_x|_inf=" + std::to_string(slope) + ")"),
        time_(time),
        slope_(slope) {}

  double time() const noexcept { return time_; }
  double slope() const noexcept { return slope_; }

 private:
  double time_;
  double slope_;
};

/// Initial data does not decay inside the torus buffer zone.
class DecayViolation : public Error {
 public:
  using Error::Error;
};

/// A requested sequence index is not resolved by the grid.
class ResolutionExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace besovlab
