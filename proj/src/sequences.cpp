#include "besovlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace besovlab {
double BumpProfile::spectrum(double xi) { return smooth_transition((0.5 - std::abs(xi)) * 4.0); }

BumpProfile build_bump(const Grid& grid, double tail_tolerance) {
  const Index inside = 2 * static_cast<Index>(std::floor(0.5 / grid.dxi())) + 1;
  if (inside < 32)
    throw ResolutionExceeded("bump needs >= 32 frequencies in [-1/2, 1/2], grid has " + std::to_string(inside));
  Eigen::ArrayXcd coeffs(grid.size());
  for (Index q = 0; q < grid.size(); ++q) coeffs[q] = BumpProfile::spectrum(grid.frequency(q));
  Field phi = inverse_transform(SpectralField(grid, std::move(coeffs)));
  const double phi0 = phi[grid.size() / 2];
  const double tail = tail_amplitude(phi);
  if (!(tail < tail_tolerance * phi0))
    throw DecayViolation("bump tail " + std::to_string(tail) + " exceeds " + std::to_string(tail_tolerance) +
                         " * phi(0); enlarge the half-length");
  return BumpProfile(std::move(phi), phi0, tail);
}

double modulation_frequency(int n) { return 17.0 / 12.0 * std::ldexp(1.0, n); }

SequenceTriple make_sequences(const BumpProfile& bump, int n) {
  const Grid& grid = bump.grid();
  const double nominal = modulation_frequency(n);
  if (n < 1 || nominal + 0.5 > 2.0 / 3.0 * grid.xi_max())
    throw ResolutionExceeded("n=" + std::to_string(n) + " needs xi_max >= " +
                             std::to_string(1.5 * (nominal + 0.5)) + ", grid has " + std::to_string(grid.xi_max()));
  const Index k = static_cast<Index>(std::llround(nominal / grid.dxi()));
  const double omega = static_cast<double>(k) * grid.dxi();
  const Eigen::ArrayXd& phi = bump.phi().samples();
  // omega x_i = pi k (2i - N) / N; reducing the integer numerator mod 2N
  // keeps the phase exact even when omega L is large.
  const Index n_pts = grid.size();
  Eigen::ArrayXd carrier(n_pts);
  for (Index i = 0; i < n_pts; ++i) {
    Index m = (k * (2 * i - n_pts)) % (2 * n_pts);
    if (m < 0) m += 2 * n_pts;
    carrier[i] = std::sin(kPi * static_cast<double>(m) / static_cast<double>(n_pts));
  }
  const double nd = static_cast<double>(n);
  return SequenceTriple{
      n,
      nominal,
      omega,
      std::abs(omega - nominal),
      Field(grid, std::pow(2.0, -1.5 * nd) * phi * carrier),
      Field(grid, 12.0 / 17.0 * std::pow(2.0, -nd) * phi),
      Field(grid, 12.0 / 17.0 * std::pow(2.0, -0.5 * nd) * phi),
  };
}

double spectral_mass_outside(const Field& f, double lo, double hi) {
  const SpectralField F = forward_transform(f);
  double total = 0.0;
  double outside = 0.0;
  for (Index q = 0; q < F.grid().size(); ++q) {
    const double p = std::norm(F.coeffs()[q]);
    const double xi = std::abs(F.grid().frequency(q));
    total += p;
    if (xi < lo || xi > hi) outside += p;
  }
  return total > 0.0 ? std::sqrt(outside / total) : 0.0;
}

LowerBoundLimits lower_bound_limits(const BumpProfile& bump) {
  const Eigen::ArrayXd& phi = bump.phi().samples();
  const double dx = bump.grid().dx();
  const double phi2 = std::sqrt(dx * phi.pow(4).sum());
  const double phi3 = std::sqrt(dx * phi.pow(6).sum());
  return {phi2 / std::sqrt(2.0), 12.0 / 17.0 * phi3 / std::sqrt(2.0)};
}

bool Lemma31Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Lemma31Report verify_lemma31(const BumpProfile& bump, int n, const CutoffPair& cutoffs) {
  const SequenceTriple seq = make_sequences(bump, n);
  const Grid& grid = bump.grid();
  const BesovIndex b32{1.5, 2.0, 1.0};
  const BesovIndex b32_inf{1.5, 2.0, kInfinity};

  Lemma31Report rep;
  rep.n = n;
  rep.frequency = seq.frequency;
  rep.snap_error = seq.snap_error;
  rep.phi0 = bump.phi0();
  rep.phi_linf = linf_norm(bump.phi());

  const Field fx = derivative(seq.f, 1);
  rep.f_linf = linf_norm(seq.f);
  rep.f_slope_linf = linf_norm(fx);
  rep.g_linf = linf_norm(seq.g);
  rep.g_slope_linf = linf_norm(derivative(seq.g, 1));
  rep.h_linf = linf_norm(seq.h);
  rep.h_slope_linf = linf_norm(derivative(seq.h, 1));
  rep.g_besov = besov_norm(seq.g, b32, cutoffs);
  rep.h_besov = besov_norm(seq.h, b32, cutoffs);
  for (double sigma : {1.5, 2.5, 3.5}) rep.f_besov.push_back(besov_norm(seq.f, {sigma, 2.0, 1.0}, cutoffs));

  const Field g_product = dealias_product(seq.g, fx);
  const Field h_product = dealias_product({seq.h, seq.h, fx});
  rep.g_product_besov = besov_norm(g_product, b32_inf, cutoffs);
  rep.g_product_besov21 = besov_norm(g_product, b32, cutoffs);
  rep.h_product_besov = besov_norm(h_product, b32_inf, cutoffs);
  rep.limits = lower_bound_limits(bump);

  rep.product_rings = cutoffs.blocks_touching(seq.frequency - 1.5, seq.frequency + 1.5);
  const std::vector<double> blocks = block_norms(h_product, 2.0, cutoffs);
  const double h_product_l2 = lp_norm(h_product, 2.0);
  for (int j = -1; j <= cutoffs.j_max(); ++j) {
    if (std::find(rep.product_rings.begin(), rep.product_rings.end(), j) != rep.product_rings.end()) continue;
    rep.localization_residual = std::max(rep.localization_residual, blocks[static_cast<size_t>(j + 1)] / h_product_l2);
  }

  const Index nyq = grid.nyquist_index();
  const SpectralField fhat = forward_transform(seq.f);
  const double amp = std::pow(2.0, -1.5 * n);
  double modulation_defect = 0.0;
  for (Index q = 0; q < grid.size(); ++q) {
    if (q == nyq) continue;
    const double xi = grid.frequency(q);
    const Complex expected =
        amp * (BumpProfile::spectrum(xi - seq.frequency) - BumpProfile::spectrum(xi + seq.frequency)) /
        Complex(0.0, 2.0);
    modulation_defect = std::max(modulation_defect, std::abs(fhat.coeffs()[q] - expected));
  }
  modulation_defect /= fhat.coeffs().abs().maxCoeff();

  const double low_block_phi = block_norms(bump.phi(), 2.0, cutoffs).front();
  const double g_expected = 12.0 / 17.0 * std::pow(2.0, -(n + 1.5)) * low_block_phi;

  rep.checks.push_back(Check::at_most("snap_error", rep.snap_error, 0.5 * grid.dxi()));
  rep.checks.push_back(Check::at_most("g_support_outside_half", spectral_mass_outside(seq.g, 0.0, 0.5), 1e-12));
  rep.checks.push_back(Check::at_most("h_support_outside_half", spectral_mass_outside(seq.h, 0.0, 0.5), 1e-12));
  rep.checks.push_back(
      Check::at_most("f_support_outside_band", spectral_mass_outside(seq.f, seq.frequency - 0.5, seq.frequency + 0.5), 1e-12));
  rep.checks.push_back(Check::at_most("f_modulation_identity", modulation_defect, 1e-12));
  rep.checks.push_back(Check::at_most("h2_fx_localization", rep.localization_residual, 1e-12));
  rep.checks.push_back(Check::at_most("g_single_block_identity", std::abs(rep.g_besov - g_expected) / g_expected, 1e-10));
  if (n >= 5) {
    rep.checks.push_back(Check::at_least("g_fx_lower_bound", rep.g_product_besov, 0.5 * rep.limits.m1));
    rep.checks.push_back(Check::at_least("h2_fx_lower_bound", rep.h_product_besov, 0.5 * rep.limits.m2));
  }
  return rep;
}

}  // namespace besovlab
