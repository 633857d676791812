#pragma once

// Littlewood-Paley blocks and nonhomogeneous Besov norms on a Grid.
//
// The low-frequency cutoff is chi(xi) = T((4/3 - |xi|) / (1/3)), equal to 1 on
// |xi| <= 1 and 0 on |xi| >= 4/3, and the ring function is
// phi(xi) = chi(xi/2) - chi(xi), supported in 1 < |xi| < 8/3. Block j >= 0
// uses phi(2^-j xi); block -1 uses chi.

#include <Eigen/Core>

#include <limits>
#include <vector>

#include "besovlab/spectral.hpp"

namespace besovlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// C-infinity step: 0 for r <= 0, 1 for r >= 1,
/// e^{-1/r} / (e^{-1/r} + e^{-1/(1-r)}) in between.
double smooth_transition(double r);

struct BesovIndex {
  double s = 1.5;
  double p = 2.0;
  double r = 1.0;

  /// Throws std::invalid_argument unless p, r are in [1, inf].
  void validate() const;
};

class CutoffPair {
 public:
  /// ring_gain scales the ring function; anything but 1 breaks the
  /// partition of unity (used for fault injection).
  explicit CutoffPair(const Grid& grid, double ring_gain = 1.0);

  static double chi(double xi);
  double ring(double xi) const;
  /// Multiplier of block j at frequency xi (chi for j = -1, 0 for j < -1).
  double block_multiplier(int j, double xi) const;

  const Grid& grid() const noexcept { return grid_; }
  double ring_gain() const noexcept { return ring_gain_; }
  /// Last block included in norms: ceil(log2(4 xi_max / 3)) + 1.
  int j_max() const noexcept { return j_max_; }

  /// Block multiplier on the half spectrum k = 0..N/2, j in [-1, j_max].
  const Eigen::ArrayXd& half_table(int j) const;

  /// Blocks whose multiplier is nonzero at some grid frequency with
  /// lo <= |xi| <= hi.
  std::vector<int> blocks_touching(double lo, double hi) const;

 private:
  Grid grid_;
  double ring_gain_;
  int j_max_;
  std::vector<Eigen::ArrayXd> tables_;  // index j + 1
};

/// Delta_j f. Zero for j < -1 and for blocks beyond the grid bandwidth.
Field dyadic_block(const Field& f, int j, const CutoffPair& cutoffs);

/// ||f||_{L^p} by dx-weighted quadrature (grid max for p = inf).
double lp_norm(const Field& f, double p);

/// ||Delta_j f||_{L^p} for j = -1..j_max (entry j + 1).
std::vector<double> block_norms(const Field& f, double p, const CutoffPair& cutoffs);

/// || (2^{js} ||Delta_j f||_{L^p})_j ||_{l^r}.
double besov_norm(const Field& f, const BesovIndex& idx, const CutoffPair& cutoffs);

double linf_norm(const Field& f);
/// ||f||_inf + ||d_x f||_inf.
double lipschitz_norm(const Field& f);

/// Constant K with ||f||_inf <= K ||f||_{B^{1/2}_{2,1}} for every grid field,
/// from the discrete support size of each block:
/// K = max_j sqrt(#supp_j / 2L) 2^{-j/2}.
double embedding_constant(const CutoffPair& cutoffs);

}  // namespace besovlab
