#include <doctest.h>

#include "besovlab/dynamics.hpp"
#include "besovlab/errors.hpp"
#include "besovlab/harness.hpp"
#include "besovlab/sequences.hpp"
#include "oracles.hpp"

using namespace besovlab;

namespace {

double max_diff(const Field& a, const Field& b) { return (a.samples() - b.samples()).abs().maxCoeff(); }

Field sine(const Grid& g, double k = 1.0) {
  return Field::from_function(g, [k](double x) { return std::sin(k * x); });
}

Field cosine(const Grid& g, double k = 1.0) {
  return Field::from_function(g, [k](double x) { return std::cos(k * x); });
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("model names") {
  CHECK(parse_model("ch") == Model::kCamassaHolm);
  CHECK(parse_model("Novikov") == Model::kNovikov);
  CHECK(to_string(Model::kNovikov) == "novikov");
  CHECK_THROWS_AS(parse_model("kdv"), std::invalid_argument);
}

TEST_CASE("constants are equilibria") {
  const Grid g(8.0 * kPi, 256);
  const Field c = Field::constant(g, 0.8);
  CHECK(p_operator(c).samples().abs().maxCoeff() <= 1e-15);
  CHECK(ch_rhs(c).samples().abs().maxCoeff() <= 1e-15);
  CHECK(q_operator(c).samples().abs().maxCoeff() <= 1e-15);
  CHECK(novikov_rhs(c).samples().abs().maxCoeff() <= 1e-15);
  CHECK(v0(c).samples().abs().maxCoeff() <= 1e-15);
  CHECK(w0(c).samples().abs().maxCoeff() <= 1e-15);
}

TEST_CASE("Camassa-Holm on sin x") {
  const Grid g(8.0 * kPi, 256);
  // u^2 + u_x^2 / 2 = 3/4 - cos(2x) / 4, and -d_x (1 - d^2)^{-1} maps cos 2x to (2/5) sin 2x.
  CHECK(max_diff(p_operator(sine(g)), -0.1 * sine(g, 2.0)) <= 1e-14);
  CHECK(max_diff(ch_rhs(sine(g)), -0.6 * sine(g, 2.0)) <= 1e-13);
  CHECK(max_diff(v0(sine(g)), ch_rhs(sine(g))) == 0.0);
}

TEST_CASE("Novikov on sin x") {
  const Grid g(8.0 * kPi, 256);
  // u_x^3 / 2 = (3 cos x + cos 3x) / 8
  // d_x(3/2 u u_x^2 + u^3) = d_x((9/8) sin x + (1/8) sin 3x) = (9/8) cos x + (3/8) cos 3x
  // Q = -(1 - d^2)^{-1}((3/2) cos x + (1/2) cos 3x) = -(3/4) cos x - (1/20) cos 3x
  // u^2 u_x = (cos x - cos 3x) / 4
  const Field q = -0.75 * cosine(g) - 0.05 * cosine(g, 3.0);
  CHECK(max_diff(q_operator(sine(g)), q) <= 1e-14);
  CHECK(max_diff(novikov_rhs(sine(g)), -1.0 * cosine(g) + 0.2 * cosine(g, 3.0)) <= 1e-13);
  CHECK(max_diff(w0(sine(g)), novikov_rhs(sine(g))) == 0.0);
}

TEST_CASE("odd data give odd Camassa-Holm right-hand sides") {
  const Grid g(8.0 * kPi, 512);
  const Field u = Field::from_function(g, [](double x) { return x * std::exp(-x * x); });
  const Field r = ch_rhs(u);
  const Field p = p_operator(u);
  const Index n = g.size();
  double r_even = 0.0, p_even = 0.0;
  for (Index i = 1; i < n; ++i) {
    r_even = std::max(r_even, std::abs(r[i] + r[n - i]));
    p_even = std::max(p_even, std::abs(p[i] + p[n - i]));
  }
  CHECK(r_even <= 1e-14 * r.samples().abs().maxCoeff());
  CHECK(p_even <= 1e-14 * p.samples().abs().maxCoeff());
}

TEST_CASE("nonlocal terms on a gaussian against kernel quadrature") {
  const double a = 0.5;
  const Grid g(32.0, 1024);
  const Field u = Field::from_function(g, [a](double x) { return a * std::exp(-0.5 * x * x); });
  auto uu = [a](double y) { return a * std::exp(-0.5 * y * y); };
  auto ux = [a](double y) { return -a * y * std::exp(-0.5 * y * y); };

  // P(u) = -d_x G * (u^2 + u_x^2 / 2)
  auto ch_density = [&](double y) { return uu(y) * uu(y) + 0.5 * ux(y) * ux(y); };
  // Q(u) = -G * (u_x^3 / 2) - d_x G * (3/2 u u_x^2 + u^3)
  auto slope_cubed = [&](double y) { return 0.5 * std::pow(ux(y), 3); };
  auto flux = [&](double y) { return 1.5 * uu(y) * ux(y) * ux(y) + std::pow(uu(y), 3); };

  const Field p = p_operator(u);
  const Field q = q_operator(u);
  double p_err = 0.0, q_err = 0.0;
  for (Index i = 0; i < g.size(); i += 8) {
    const double x = g.x(i);
    p_err = std::max(p_err, std::abs(p[i] + oracle::helmholtz_convolution_dx(ch_density, x)));
    const double q_ref =
        -oracle::helmholtz_convolution(slope_cubed, x) - oracle::helmholtz_convolution_dx(flux, x);
    q_err = std::max(q_err, std::abs(q[i] - q_ref));
  }
  CHECK(p_err <= 1e-8);
  CHECK(q_err <= 1e-8);
}

TEST_CASE("right-hand side on sequence data matches a 4x finer grid") {
  // The bump and the carrier on the finer grid are the trigonometric
  // interpolants of the coarse ones, so the fine-grid products are exact.
  const Grid coarse(32.0 * kPi, 8192);
  const Grid fine(32.0 * kPi, 4 * 8192);
  const SequenceTriple sc = make_sequences(build_bump(coarse), 5);
  const SequenceTriple sf = make_sequences(build_bump(fine), 5);
  const Field uc = sc.f + sc.g;
  const Field uf = sf.f + sf.g;
  const Field uxf = derivative(uf, 1);

  const Field density = pointwise_product(uf, uf) + 0.5 * pointwise_product(uxf, uxf);
  const Field p_fine = -1.0 * derivative(helmholtz_inverse(density), 1);
  const Field rhs_fine = p_fine - pointwise_product(uf, uxf);

  const Field rhs_coarse = ch_rhs(uc);
  double worst = 0.0;
  for (Index i = 0; i < coarse.size(); ++i) worst = std::max(worst, std::abs(rhs_coarse[i] - rhs_fine[4 * i]));
  CHECK(worst <= 1e-9 * rhs_coarse.samples().abs().maxCoeff());
}

TEST_CASE("functionals E and F") {
  const Grid g(32.0 * kPi, 1024);
  const CutoffPair c(g);
  CHECK(functional_E(Field::zeros(g), c) == 1.0);
  CHECK(functional_F(Field::zeros(g), c) == 1.0);

  // sin x sits in block -1, so ||sin||_{B^s_{2,1}} = 2^{-s} sqrt(L); sup = 1, Lipschitz = 2.
  const double root_l = std::sqrt(g.half_length());
  const double b52 = std::pow(2.0, -2.5) * root_l;
  const double b72 = std::pow(2.0, -3.5) * root_l;
  const double e = 1.0 + 4.0 * b52 + 1.0 * (b52 + (1.0 + 4.0) * b72);
  const double f = 1.0 + 4.0 * b52 + 16.0 * b72;
  // Roundoff in the empty high blocks carries weights up to 2^{7 j / 2}.
  CHECK(functional_E(sine(g), c) == doctest::Approx(e).epsilon(1e-9));
  CHECK(functional_F(sine(g), c) == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("E and F stay bounded along the sequences") {
  const Grid g = GridSpec{}.make();
  const CutoffPair c(g);
  const BumpProfile bump = build_bump(g);
  std::vector<double> e_f, e_u, f_u;
  for (int n = 4; n <= 8; ++n) {
    const SequenceTriple s = make_sequences(bump, n);
    e_f.push_back(functional_E(s.f, c));
    e_u.push_back(functional_E(s.f + s.g, c));
    f_u.push_back(functional_F(s.f + s.h, c));
  }
  for (const auto* v : {&e_f, &e_u, &f_u}) {
    const auto [lo, hi] = std::minmax_element(v->begin(), v->end());
    CHECK(*hi / *lo < 1.5);
  }
}

TEST_CASE("solver configuration") {
  SolverConfig cfg;
  cfg.final_time = 1.0;
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cfl = 0.3;
  cfg.sample_times = {0.5, 0.2};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.sample_times = {0.5, 2.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("evolve: trivial horizons and equilibria") {
  const Grid g(8.0 * kPi, 256);
  const Field u0 = smooth_profile(g);
  SolverConfig cfg;
  const Trajectory none = evolve(u0, Model::kCamassaHolm, cfg);
  REQUIRE(none.samples.size() == 1);
  CHECK(none.samples[0].time == 0.0);
  CHECK(max_diff(none.samples[0].u, u0) == 0.0);

  cfg.final_time = 0.5;
  for (Model m : {Model::kCamassaHolm, Model::kNovikov}) {
    const Trajectory t = evolve(Field::constant(g, -1.3), m, cfg);
    CHECK((t.samples.back().u.samples() + 1.3).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("evolve lands on sample times and is deterministic") {
  const Grid g(8.0 * kPi, 512);
  const Field u0 = smooth_profile(g);
  SolverConfig cfg;
  cfg.final_time = 0.3;
  cfg.sample_times = {0.0, 0.013, 0.1, 0.25};
  cfg.diagnostic_norms = {{1.5, 2.0, 1.0}};
  const Trajectory a = evolve(u0, Model::kNovikov, cfg);
  const Trajectory b = evolve(u0, Model::kNovikov, cfg);
  REQUIRE(a.samples.size() == 5);
  for (size_t k = 1; k < a.samples.size(); ++k) CHECK(a.samples[k].time > a.samples[k - 1].time);
  CHECK(a.samples[2].time == 0.1);
  CHECK(a.samples.back().time == 0.3);
  CHECK(a.samples[1].besov.size() == 1);
  CHECK(&a.at(0.1) == &a.samples[2]);
  CHECK_THROWS_AS(a.at(0.2), std::out_of_range);
  for (size_t k = 0; k < a.samples.size(); ++k) CHECK((a.samples[k].u.samples() == b.samples[k].u.samples()).all());
  CHECK(a.max_h1_drift < 1e-10);
}

TEST_CASE("steep data trigger the blow-up monitor") {
  const Grid g(8.0 * kPi, 512);
  SolverConfig cfg;
  cfg.final_time = 3.0;
  cfg.blowup_threshold = 0.6;  // the datum starts with slope -0.5 and steepens
  try {
    evolve(Field::from_function(g, [](double x) { return -0.5 * std::tanh(x) * std::exp(-0.05 * x * x); }),
           Model::kCamassaHolm, cfg);
    FAIL("expected BlowUp");
  } catch (const BlowUp& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.slope() > 0.6);
  }
}

TEST_CASE("H1 energy uses the spectral derivative") {
  const Grid g(kPi, 64);
  // ||sin 3x||^2 = pi and ||3 cos 3x||^2 = 9 pi on [-pi, pi).
  CHECK(h1_energy(sine(g, 3.0)) == doctest::Approx(10.0 * kPi).epsilon(1e-13));
}

}
