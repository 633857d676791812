#include <algorithm>
#include <cmath>
#include <random>

#include "besovlab/harness.hpp"
#include "besovlab/random_fields.hpp"

namespace besovlab {
namespace {

// Grid for the randomized spectral and Littlewood-Paley properties.
const GridSpec kPropertyGrid{1024, 8.0 * kPi};
// Grid for the short solver runs.
const GridSpec kSolverGrid{2048, 8.0 * kPi};

// Frozen corpus for the product-estimate constant.
constexpr std::uint64_t kProductCorpusSeed = 20200710;
constexpr int kProductCorpusSize = 200;

// Frozen constant in ||S_t u0 - u0||_inf <= K t ||u0||_{C01}^2, t <= 0.1:
// about twice the largest ratio seen for the smooth profile (0.26, CH).
constexpr double kSmallTimeConstant = 0.6;

template <typename Derived>
double max_abs(const Eigen::ArrayBase<Derived>& a) {
  return a.abs().maxCoeff();
}

Index random_bandwidth(std::mt19937_64& rng, Index hi) {
  return std::uniform_int_distribution<Index>(1, hi)(rng);
}

void spectral_properties(Experiment& exp, std::mt19937_64& rng, int samples) {
  const Grid grid = kPropertyGrid.make();
  const Index nyq = grid.size() / 2;
  std::normal_distribution<double> normal;
  double round_trip = 0.0, linearity = 0.0, parseval = 0.0, second = 0.0, adjoint = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Field f = random_band_limited_field(grid, rng, nyq);
    const Field g = random_band_limited_field(grid, rng, nyq);
    const SpectralField F = forward_transform(f);
    const SpectralField G = forward_transform(g);

    round_trip = std::max(round_trip, max_abs(inverse_transform(F).samples() - f.samples()) / max_abs(f.samples()));

    const double a = normal(rng), b = normal(rng);
    const Eigen::ArrayXcd lin = forward_transform(a * f + b * g).coeffs() - (a * F.coeffs() + b * G.coeffs());
    linearity = std::max(linearity, max_abs(lin) / (std::abs(a) * max_abs(F.coeffs()) + std::abs(b) * max_abs(G.coeffs())));

    const double physical = l2_squared(f);
    const double spectral = F.coeffs().abs2().sum() / (2.0 * grid.half_length());
    parseval = std::max(parseval, std::abs(physical - spectral) / physical);

    // Band-limited below Nyquist so repeated differentiation is exact.
    const Field h = random_band_limited_field(grid, rng, nyq - 1);
    const Field d2 = derivative(h, 2);
    second = std::max(second, max_abs((derivative(derivative(h, 1), 1) - d2).samples()) / max_abs(d2.samples()));

    const double lhs = grid.dx() * (helmholtz_inverse(f).samples() * g.samples()).sum();
    const double rhs = grid.dx() * (f.samples() * helmholtz_inverse(g).samples()).sum();
    adjoint = std::max(adjoint, std::abs(lhs - rhs) / std::sqrt(l2_squared(f) * l2_squared(g)));
  }
  exp.checks.push_back(Check::at_most("fft_round_trip", round_trip, 1e-12));
  exp.checks.push_back(Check::at_most("transform_linearity", linearity, 1e-12));
  exp.checks.push_back(Check::at_most("parseval", parseval, 1e-10));
  exp.checks.push_back(Check::at_most("second_derivative_composition", second, 1e-10));
  exp.checks.push_back(Check::at_most("helmholtz_self_adjoint", adjoint, 1e-10));
}

void littlewood_paley_properties(Experiment& exp, std::mt19937_64& rng, const ValidationOptions& options) {
  const Grid grid = kPropertyGrid.make();
  const CutoffPair cutoffs(grid, options.ring_gain);
  const Index nyq = grid.size() / 2;

  // Partition of unity, sampled and on the grid.
  double partition = 0.0;
  auto defect = [&](double xi) {
    double sum = 0.0;
    for (int j = -1; j <= cutoffs.j_max(); ++j) sum += cutoffs.block_multiplier(j, xi);
    return std::abs(sum - 1.0);
  };
  std::uniform_real_distribution<double> frequency(-grid.xi_max(), grid.xi_max());
  for (int s = 0; s < options.frequency_samples; ++s) partition = std::max(partition, defect(frequency(rng)));
  for (Index q = 0; q <= nyq; ++q) partition = std::max(partition, defect(grid.frequency(q)));
  exp.checks.push_back(Check::at_most("partition_of_unity", partition, 1e-12));

  double support = 0.0;
  for (double xi : {0.0, 0.25, 0.5, 0.75, 8.0 / 3.0, 3.0, 10.0}) support = std::max(support, cutoffs.ring(xi));
  for (double xi : {4.0 / 3.0, 1.5, 2.0, 5.0}) support = std::max(support, CutoffPair::chi(xi));
  exp.checks.push_back(Check::at_most("cutoff_supports", support, 0.0));

  double reconstruction = 0.0, orthogonality = 0.0, monotone = 0.0;
  double embedding_ratio = 0.0;
  const double k_embed = embedding_constant(cutoffs);
  for (int s = 0; s < options.samples; ++s) {
    const Field f = random_band_limited_field(grid, rng, random_bandwidth(rng, nyq));
    std::vector<Field> blocks;
    Field sum = Field::zeros(grid);
    for (int j = -1; j <= cutoffs.j_max(); ++j) {
      blocks.push_back(dyadic_block(f, j, cutoffs));
      sum += blocks.back();
    }
    const double scale = max_abs(f.samples());
    reconstruction = std::max(reconstruction, max_abs((sum - f).samples()) / scale);
    for (int j = -1; j <= cutoffs.j_max(); ++j)
      for (int k = j + 2; k <= cutoffs.j_max(); ++k)
        orthogonality =
            std::max(orthogonality, max_abs(dyadic_block(blocks[j + 1], k, cutoffs).samples()) / scale);

    const double b1 = besov_norm(f, {1.5, 2.0, 1.0}, cutoffs);
    const double b2 = besov_norm(f, {1.5, 2.0, 2.0}, cutoffs);
    const double binf = besov_norm(f, {1.5, 2.0, kInfinity}, cutoffs);
    monotone = std::max({monotone, (b2 - b1) / b1, (binf - b2) / b1});

    embedding_ratio = std::max(embedding_ratio, linf_norm(f) / (k_embed * besov_norm(f, {0.5, 2.0, 1.0}, cutoffs)));
  }
  exp.scalars["embedding_constant"] = k_embed;
  exp.checks.push_back(Check::at_most("block_reconstruction", reconstruction, 1e-10));
  exp.checks.push_back(Check::at_most("block_orthogonality", orthogonality, 1e-12));
  exp.checks.push_back(Check::at_most("r_monotonicity", monotone, 1e-12));
  exp.checks.push_back(Check::at_most("embedding_constant_below_2", k_embed, 2.0));
  exp.checks.push_back(Check::at_most("embedding_bound", embedding_ratio, 1.0));

  // Product estimate: bandwidth below N/4 keeps pointwise products exact.
  const BesovIndex idx{1.5, 2.0, 1.0};
  auto product_ratio = [&](std::mt19937_64& r) {
    const Field u = random_band_limited_field(grid, r, random_bandwidth(r, nyq / 2 - 1));
    const Field v = random_band_limited_field(grid, r, random_bandwidth(r, nyq / 2 - 1));
    const double bound = besov_norm(u, idx, cutoffs) * linf_norm(v) + besov_norm(v, idx, cutoffs) * linf_norm(u);
    return besov_norm(pointwise_product(u, v), idx, cutoffs) / bound;
  };
  std::mt19937_64 corpus(kProductCorpusSeed);
  double c_star = 0.0;
  for (int s = 0; s < kProductCorpusSize; ++s) c_star = std::max(c_star, product_ratio(corpus));
  double fresh = 0.0;
  for (int s = 0; s < options.samples; ++s) fresh = std::max(fresh, product_ratio(rng));
  exp.scalars["product_constant"] = c_star;
  exp.checks.push_back(Check::at_most("product_estimate", fresh, 2.0 * c_star));
}

void solver_properties(Experiment& exp) {
  const Grid grid = kSolverGrid.make();
  const Field smooth = smooth_profile(grid);
  const Field constant = Field::constant(grid, 0.7);
  for (Model model : {Model::kCamassaHolm, Model::kNovikov}) {
    const std::string name(to_string(model));
    SolverConfig cfg;
    cfg.final_time = 1.0;
    const Trajectory traj = evolve(smooth, model, cfg);
    exp.scalars[name + "_h1_drift"] = traj.max_h1_drift;
    exp.checks.push_back(Check::at_most(name + "_h1_conservation", traj.max_h1_drift, kH1DriftTolerance));

    const Trajectory still = evolve(constant, model, cfg);
    exp.checks.push_back(
        Check::at_most(name + "_constant_equilibrium", max_abs(still.samples.back().u.samples() - 0.7), 1e-12));

    SolverConfig short_cfg;
    short_cfg.final_time = 0.1;
    short_cfg.sample_times = {0.01, 0.02, 0.05, 0.1};
    const Trajectory early = evolve(smooth, model, short_cfg);
    const double lip = lipschitz_norm(smooth);
    double worst = 0.0;
    for (double t : short_cfg.sample_times)
      worst = std::max(worst, linf_norm(early.at(t).u - smooth) / (t * lip * lip));
    exp.scalars[name + "_small_time_ratio"] = worst;
    exp.checks.push_back(Check::at_most(name + "_small_time_consistency", worst, kSmallTimeConstant));
  }
}

void sequence_properties(Experiment& exp, const ValidationOptions& options) {
  const Grid grid = options.grid.make();
  const CutoffPair cutoffs(grid, options.ring_gain);
  const BumpProfile bump = build_bump(grid);
  exp.scalars["phi0"] = bump.phi0();
  exp.scalars["bump_tail"] = bump.tail();
  std::vector<double> g_scaled, h_scaled;
  for (int n : options.n_values) {
    const Lemma31Report rep = verify_lemma31(bump, n, cutoffs);
    for (const Check& c : rep.checks) {
      Check prefixed = c;
      prefixed.name = "n" + std::to_string(n) + "_" + c.name;
      exp.checks.push_back(prefixed);
    }
    g_scaled.push_back(rep.g_besov * std::pow(2.0, n));
    h_scaled.push_back(rep.h_besov * std::pow(2.0, 0.5 * n));
  }
  double g_spread = 0.0, h_spread = 0.0;
  for (size_t k = 0; k < g_scaled.size(); ++k) {
    g_spread = std::max(g_spread, std::abs(g_scaled[k] - g_scaled[0]) / g_scaled[0]);
    h_spread = std::max(h_spread, std::abs(h_scaled[k] - h_scaled[0]) / h_scaled[0]);
  }
  exp.checks.push_back(Check::at_most("g_vanishing_scaling", g_spread, 1e-10));
  exp.checks.push_back(Check::at_most("h_vanishing_scaling", h_spread, 1e-10));
}

}  // namespace

ExperimentReport run_validation_suite(const ValidationOptions& options) {
  ExperimentReport report;
  report.command = "validate";
  report.config = {{"seed", options.seed},
                   {"grid", {{"num_points", options.grid.num_points}, {"half_length", options.grid.half_length}}},
                   {"samples", options.samples},
                   {"frequency_samples", options.frequency_samples},
                   {"ring_gain", options.ring_gain},
                   {"n_values", options.n_values}};

  std::mt19937_64 rng(options.seed);
  auto stage = [&](const char* name, auto&& body) {
    Experiment exp;
    exp.name = name;
    try {
      body(exp);
    } catch (const std::exception& e) {
      exp.errors.push_back(e.what());
      exp.checks.push_back(Check::holds(std::string(name) + "_completed", false));
    }
    report.experiments.push_back(std::move(exp));
  };
  stage("spectral", [&](Experiment& e) { spectral_properties(e, rng, options.samples); });
  stage("littlewood_paley", [&](Experiment& e) { littlewood_paley_properties(e, rng, options); });
  stage("solver", [&](Experiment& e) { solver_properties(e); });
  stage("sequences", [&](Experiment& e) { sequence_properties(e, options); });
  return report;
}

}  // namespace besovlab
