#pragma once

// Band-limited bump and the high/low frequency sequences
//
//   f_n = 2^{-3n/2} phi(x) sin(omega_n x),  omega_n = (17/12) 2^n,
//   g_n = (12/17) 2^{-n} phi(x),
//   h_n = (12/17) 2^{-n/2} phi(x),
//
// where phihat = 1 on |xi| <= 1/4 and 0 on |xi| >= 1/2.

#include <string>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/check.hpp"
#include "besovlab/spectral.hpp"

namespace besovlab {

/// Relative tail bound max_{|x| >= L/2} |phi| / phi(0) required of the bump.
/// A compactly supported transform forces sub-exponential decay, so the
/// bound has to be relative and loose; see README.
inline constexpr double kBumpTailTolerance = 1e-2;

class BumpProfile {
 public:
  /// phihat(xi) = T((1/2 - |xi|) / (1/4)).
  static double spectrum(double xi);

  const Grid& grid() const noexcept { return phi_.grid(); }
  const Field& phi() const noexcept { return phi_; }
  double phi0() const noexcept { return phi0_; }
  double tail() const noexcept { return tail_; }

 private:
  friend BumpProfile build_bump(const Grid& grid, double tail_tolerance);
  explicit BumpProfile(Field phi, double phi0, double tail) : phi_(std::move(phi)), phi0_(phi0), tail_(tail) {}

  Field phi_;
  double phi0_;
  double tail_;
};

/// Throws ResolutionExceeded if fewer than 32 grid frequencies fall in
/// [-1/2, 1/2], DecayViolation if tail / phi(0) >= tail_tolerance.
BumpProfile build_bump(const Grid& grid, double tail_tolerance = kBumpTailTolerance);

/// (17/12) 2^n.
double modulation_frequency(int n);

struct SequenceTriple {
  int n = 0;
  double nominal_frequency = 0.0;
  /// nominal frequency snapped to the grid.
  double frequency = 0.0;
  double snap_error = 0.0;
  Field f;
  Field g;
  Field h;
};

/// Throws ResolutionExceeded unless (17/12) 2^n + 1/2 <= (2/3) xi_max.
SequenceTriple make_sequences(const BumpProfile& bump, int n);

/// Fraction of spectral L^2 mass at frequencies with |xi| outside [lo, hi].
double spectral_mass_outside(const Field& f, double lo, double hi);

/// n -> infinity limits of ||g_n d_x f_n||_{B^{3/2}_{2,inf}} and
/// ||h_n^2 d_x f_n||_{B^{3/2}_{2,inf}}.
struct LowerBoundLimits {
  double m1 = 0.0;  // 2^{-1/2} ||phi^2||_{L^2}
  double m2 = 0.0;  // (12/17) 2^{-1/2} ||phi^3||_{L^2}
};
LowerBoundLimits lower_bound_limits(const BumpProfile& bump);

struct Lemma31Report {
  int n = 0;
  double frequency = 0.0;
  double snap_error = 0.0;
  double phi0 = 0.0;
  double phi_linf = 0.0;

  // Left sides of the uniform bounds.
  double f_linf = 0.0;
  double f_slope_linf = 0.0;
  double g_linf = 0.0;
  double g_slope_linf = 0.0;
  double h_linf = 0.0;
  double h_slope_linf = 0.0;
  double g_besov = 0.0;              // B^{3/2}_{2,1}
  double h_besov = 0.0;              // B^{3/2}_{2,1}
  std::vector<double> f_besov;       // B^sigma_{2,1}, sigma = 3/2, 5/2, 7/2

  // Products that carry the lower bounds.
  double g_product_besov = 0.0;      // ||g_n d_x f_n||_{B^{3/2}_{2,inf}}
  double h_product_besov = 0.0;      // ||h_n^2 d_x f_n||_{B^{3/2}_{2,inf}}
  double g_product_besov21 = 0.0;    // ||g_n d_x f_n||_{B^{3/2}_{2,1}}
  std::vector<int> product_rings;    // blocks touching the product support
  double localization_residual = 0.0;
  LowerBoundLimits limits;

  std::vector<Check> checks;
  bool all_pass() const;
};

Lemma31Report verify_lemma31(const BumpProfile& bump, int n, const CutoffPair& cutoffs);

}  // namespace besovlab
