#include <doctest.h>

#include "besovlab/errors.hpp"
#include "besovlab/harness.hpp"
#include "besovlab/sequences.hpp"
#include "oracles.hpp"

using namespace besovlab;

namespace {

const Grid& default_grid() {
  static const Grid g = GridSpec{}.make();
  return g;
}

const BumpProfile& default_bump() {
  static const BumpProfile b = build_bump(default_grid());
  return b;
}

}  // namespace

TEST_SUITE("sequences") {

TEST_CASE("bump transform plateau and support") {
  CHECK(BumpProfile::spectrum(0.0) == 1.0);
  CHECK(BumpProfile::spectrum(0.2) == 1.0);
  CHECK(BumpProfile::spectrum(-0.25) == 1.0);
  CHECK(BumpProfile::spectrum(0.5) == 0.0);
  CHECK(BumpProfile::spectrum(0.6) == 0.0);
  for (double xi : {0.3, 0.37, 0.45}) CHECK(BumpProfile::spectrum(xi) == doctest::Approx(oracle::bump_hat(xi)).epsilon(1e-14));
}

TEST_CASE("bump is real, even and matches the trigonometric sum") {
  const BumpProfile& bump = default_bump();
  const Grid& g = default_grid();
  const Eigen::ArrayXd& p = bump.phi().samples();
  const Index n = g.size();
  double odd = 0.0;
  for (Index i = 1; i < n; ++i) odd = std::max(odd, std::abs(p[i] - p[n - i]));
  CHECK(odd <= 1e-12 * bump.phi0());
  CHECK(bump.phi0() > 0.0);
  double worst = 0.0;
  for (Index i = 0; i < n; i += 61) worst = std::max(worst, std::abs(p[i] - oracle::bump_periodic(g.x(i), g.half_length())));
  CHECK(worst <= 1e-14);
  // On the torus the bump is the sum of its translates by 2L; the line profile
  // differs only by the images' tails.
  for (double x : {0.0, 1.0, 5.0, 12.5})
    CHECK(std::abs(oracle::bump_periodic(x, g.half_length()) - oracle::bump_line(x)) <= 1e-4 * bump.phi0());
}

TEST_CASE("bump L2 norm matches the transform side") {
  const double l2 = std::sqrt(default_grid().dx() * default_bump().phi().samples().square().sum());
  CHECK(l2 == doctest::Approx(std::sqrt(oracle::bump_periodic_l2_squared(default_grid().half_length()))).epsilon(1e-12));
  CHECK(l2 == doctest::Approx(std::sqrt(oracle::bump_l2_squared())).epsilon(1e-4));
}

TEST_CASE("bump construction errors") {
  CHECK_THROWS_AS(build_bump(Grid(4.0 * kPi, 256)), ResolutionExceeded);
  // The transform has compact support, so the bump cannot decay below 1e-12
  // of its peak on any practical torus.
  CHECK_THROWS_AS(build_bump(default_grid(), 1e-12), DecayViolation);
  CHECK(default_bump().tail() < kBumpTailTolerance * default_bump().phi0());
}

TEST_CASE("sequence definitions") {
  const BumpProfile& bump = default_bump();
  const Grid& g = default_grid();
  for (int n = 4; n <= 8; ++n) {
    const SequenceTriple s = make_sequences(bump, n);
    CHECK(s.nominal_frequency == 17.0 / 12.0 * std::pow(2.0, n));
    CHECK(s.snap_error < 0.5 * g.dxi());
    CHECK((s.g.samples() - 12.0 / 17.0 * std::pow(2.0, -n) * bump.phi().samples()).abs().maxCoeff() == 0.0);
    CHECK((s.h.samples() - 12.0 / 17.0 * std::pow(2.0, -0.5 * n) * bump.phi().samples()).abs().maxCoeff() == 0.0);
    double worst = 0.0;
    for (Index i = 0; i < g.size(); i += 97) {
      const double expected = std::pow(2.0, -1.5 * n) * bump.phi()[i] * std::sin(s.frequency * g.x(i));
      worst = std::max(worst, std::abs(s.f[i] - expected));
    }
    CHECK(worst <= 1e-12 * std::pow(2.0, -1.5 * n));
    CHECK(spectral_mass_outside(s.g, 0.0, 0.5) <= 1e-12);
    CHECK(spectral_mass_outside(s.f, s.frequency - 0.5, s.frequency + 0.5) <= 1e-12);
  }
  CHECK_THROWS_AS(make_sequences(bump, 9), ResolutionExceeded);
  CHECK_THROWS_AS(make_sequences(bump, 0), ResolutionExceeded);
}

TEST_CASE("lower-bound limits against line quadrature") {
  const LowerBoundLimits lim = lower_bound_limits(default_bump());
  const double phi4 = oracle::bump_power_integral(4);
  const double phi6 = oracle::bump_power_integral(6);
  CHECK(lim.m1 == doctest::Approx(std::sqrt(phi4 / 2.0)).epsilon(1e-6));
  CHECK(lim.m2 == doctest::Approx(12.0 / 17.0 * std::sqrt(phi6 / 2.0)).epsilon(1e-6));
}

TEST_CASE("product support and ring membership") {
  const Grid& g = default_grid();
  const CutoffPair cutoffs(g);
  for (int n = 4; n <= 8; ++n) {
    const SequenceTriple s = make_sequences(default_bump(), n);
    const Field fx = derivative(s.f, 1);
    const Field product = dealias_product({s.h, s.h, fx});
    CHECK(spectral_mass_outside(product, s.frequency - 1.5, s.frequency + 1.5) <= 1e-12);

    const Lemma31Report rep = verify_lemma31(default_bump(), n, cutoffs);
    if (n == 4)
      CHECK(rep.product_rings == std::vector<int>{3, 4});
    else
      CHECK(rep.product_rings == std::vector<int>{n});
    CHECK(rep.localization_residual <= 1e-12);
  }
}

TEST_CASE("lemma report passes at every n") {
  const CutoffPair cutoffs(default_grid());
  for (int n = 4; n <= 8; ++n) {
    const Lemma31Report rep = verify_lemma31(default_bump(), n, cutoffs);
    for (const Check& c : rep.checks) CHECK_MESSAGE(c.pass, "n=", n, " ", c.name, " measured ", c.measured);
    CHECK(rep.f_besov.size() == 3);
    CHECK(rep.g_product_besov21 >= rep.g_product_besov);
  }
}

}
