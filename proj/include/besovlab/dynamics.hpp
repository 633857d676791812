#pragma once

// Camassa-Holm and Novikov equations in nonlocal transport form,
//
//   CH:       u_t + u u_x   = P(u),  P(u) = -d_x (1 - d_x^2)^{-1} (u^2 + u_x^2 / 2)
//   Novikov:  u_t + u^2 u_x = Q(u),  Q(u) = -(1 - d_x^2)^{-1} (u_x^3 / 2 + d_x(3/2 u u_x^2 + u^3))
//
// with an explicit RK4 integrator. Products are formed on a grid padded past
// (degree + 1) N / 2 points, so every retained mode is alias free.

#include <string>
#include <string_view>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/spectral.hpp"

namespace besovlab {

enum class Model { kCamassaHolm, kNovikov };

std::string_view to_string(Model model);
/// Accepts "ch" and "novikov" (case-insensitive).
Model parse_model(std::string_view name);

Field p_operator(const Field& u);
Field ch_rhs(const Field& u);
Field q_operator(const Field& u);
Field novikov_rhs(const Field& u);
Field rhs(Model model, const Field& u);

/// First-order Taylor coefficient of the CH solution map, P(u0) - u0 u0_x.
inline Field v0(const Field& u0) { return ch_rhs(u0); }
/// First-order Taylor coefficient of the Novikov solution map, Q(u0) - u0^2 u0_x.
inline Field w0(const Field& u0) { return novikov_rhs(u0); }

/// 1 + |u|_{C01}^2 |u|_{B^{5/2}} + |u|_inf (|u|_{B^{5/2}} + (|u|_inf + |u|_{C01}^2) |u|_{B^{7/2}}),
/// Besov norms in B_{2,1}.
double functional_E(const Field& u0, const CutoffPair& cutoffs);
/// 1 + |u|_{C01}^2 |u|_{B^{5/2}} + |u|_{C01}^4 |u|_{B^{7/2}}.
double functional_F(const Field& u0, const CutoffPair& cutoffs);

/// dx * sum (u^2 + u_x^2), with the spectral derivative.
double h1_energy(const Field& u);

struct SolverConfig {
  double final_time = 0.0;
  double cfl = 0.3;
  double dt_max = 1e-2;
  /// Times in [0, final_time] at which to record the solution; final_time is
  /// always recorded.
  std::vector<double> sample_times;
  /// Abort once ||u_x||_inf exceeds this.
  double blowup_threshold = 1e6;
  /// Besov norms recorded at every sample (requires cutoffs in evolve).
  std::vector<BesovIndex> diagnostic_norms;

  void validate() const;
};

struct TrajectorySample {
  double time = 0.0;
  Field u;
  double h1_energy = 0.0;
  double lipschitz = 0.0;
  std::vector<double> besov;  // parallel to SolverConfig::diagnostic_norms
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// max_t |E(t) - E(0)| / E(0) over every time step.
  double max_h1_drift = 0.0;
  long steps = 0;

  const TrajectorySample& at(double time) const;
};

/// Classical RK4 with dt = min(dt_max, cfl dx / (1 + ||u||_inf)), landing
/// exactly on every sample time. Throws BlowUp or InvalidField.
Trajectory evolve(const Field& u0, Model model, const SolverConfig& config,
                  const CutoffPair* cutoffs = nullptr);

}  // namespace besovlab
