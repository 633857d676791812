#include "besovlab/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "fft.hpp"

namespace besovlab {
namespace {

using detail::analyze;
using detail::resize_half;
using detail::synthesize;

// Half-spectrum tables on the base grid. Odd multipliers vanish at Nyquist.
struct Multipliers {
  Eigen::ArrayXcd ddx;        // i xi
  Eigen::ArrayXd helmholtz;   // 1 / (1 + xi^2)

  explicit Multipliers(const Grid& grid) {
    const Index h = grid.size() / 2;
    ddx.resize(h + 1);
    helmholtz.resize(h + 1);
    for (Index q = 0; q < h; ++q) {
      const double xi = grid.frequency(q);
      ddx[q] = Complex(0.0, xi);
      helmholtz[q] = 1.0 / (1.0 + xi * xi);
    }
    ddx[h] = 0.0;
    helmholtz[h] = 1.0 / (1.0 + grid.xi_max() * grid.xi_max());
  }
};

Eigen::ArrayXd to_fine(const Eigen::ArrayXcd& c, Index n, Index m) { return synthesize(resize_half(c, n, m), m); }
Eigen::ArrayXcd to_coarse(const Eigen::ArrayXd& fine, Index m, Index n) { return resize_half(analyze(fine), m, n); }

Field finish(const Grid& grid, const Eigen::ArrayXcd& c, const char* what) {
  Eigen::ArrayXd s = synthesize(c, grid.size());
  if (!s.allFinite()) throw InvalidField(std::string("non-finite values in ") + what);
  return Field(grid, std::move(s));
}

// Series coefficients of u^2 + u_x^2 / 2 and of u u_x (both truncated).
struct ChProducts {
  Eigen::ArrayXcd energy_density;
  Eigen::ArrayXcd transport;
};

ChProducts ch_products(const Field& u, const Multipliers& mult) {
  const Index n = u.size();
  const Index m = detail::padded_size(n, 2);
  const Eigen::ArrayXcd c = analyze(u.samples());
  const Eigen::ArrayXd uf = to_fine(c, n, m);
  const Eigen::ArrayXd uxf = to_fine(c * mult.ddx, n, m);
  return {to_coarse(uf.square() + 0.5 * uxf.square(), m, n), to_coarse(uf * uxf, m, n)};
}

Eigen::ArrayXcd p_from_density(const Eigen::ArrayXcd& density, const Multipliers& mult) {
  return -(density * mult.ddx) * mult.helmholtz;
}

struct NovikovProducts {
  Eigen::ArrayXcd slope_cubed;  // u_x^3
  Eigen::ArrayXcd flux;         // 3/2 u u_x^2 + u^3
  Eigen::ArrayXcd transport;    // u^2 u_x
};

NovikovProducts novikov_products(const Field& u, const Multipliers& mult) {
  const Index n = u.size();
  const Index m = detail::padded_size(n, 3);
  const Eigen::ArrayXcd c = analyze(u.samples());
  const Eigen::ArrayXd uf = to_fine(c, n, m);
  const Eigen::ArrayXd uxf = to_fine(c * mult.ddx, n, m);
  return {to_coarse(uxf.cube(), m, n), to_coarse(1.5 * uf * uxf.square() + uf.cube(), m, n),
          to_coarse(uf.square() * uxf, m, n)};
}

Eigen::ArrayXcd q_from_products(const NovikovProducts& pr, const Multipliers& mult) {
  return -(0.5 * pr.slope_cubed + pr.flux * mult.ddx) * mult.helmholtz;
}

double parseval_h1(const Field& u, const Multipliers& mult) {
  const Index n = u.size();
  const Eigen::ArrayXcd c = analyze(u.samples());
  double acc = 0.0;
  for (Index q = 0; q <= n / 2; ++q) {
    const double w = (q == 0 || q == n / 2) ? 1.0 : 2.0;
    acc += w * (1.0 + std::norm(mult.ddx[q])) * std::norm(c[q]);
  }
  return 2.0 * u.grid().half_length() * acc;
}

}  // namespace

std::string_view to_string(Model model) { return model == Model::kCamassaHolm ? "ch" : "novikov"; }

Model parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "ch" || lower == "camassa-holm") return Model::kCamassaHolm;
  if (lower == "novikov") return Model::kNovikov;
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected ch|novikov)");
}

Field p_operator(const Field& u) {
  const Multipliers mult(u.grid());
  return finish(u.grid(), p_from_density(ch_products(u, mult).energy_density, mult), "P(u)");
}

Field ch_rhs(const Field& u) {
  const Multipliers mult(u.grid());
  const ChProducts pr = ch_products(u, mult);
  return finish(u.grid(), p_from_density(pr.energy_density, mult) - pr.transport, "CH right-hand side");
}

Field q_operator(const Field& u) {
  const Multipliers mult(u.grid());
  return finish(u.grid(), q_from_products(novikov_products(u, mult), mult), "Q(u)");
}

Field novikov_rhs(const Field& u) {
  const Multipliers mult(u.grid());
  const NovikovProducts pr = novikov_products(u, mult);
  return finish(u.grid(), q_from_products(pr, mult) - pr.transport, "Novikov right-hand side");
}

Field rhs(Model model, const Field& u) {
  return model == Model::kCamassaHolm ? ch_rhs(u) : novikov_rhs(u);
}

double functional_E(const Field& u0, const CutoffPair& cutoffs) {
  const double lip = lipschitz_norm(u0);
  const double sup = linf_norm(u0);
  const double b52 = besov_norm(u0, {2.5, 2.0, 1.0}, cutoffs);
  const double b72 = besov_norm(u0, {3.5, 2.0, 1.0}, cutoffs);
  return 1.0 + lip * lip * b52 + sup * (b52 + (sup + lip * lip) * b72);
}

double functional_F(const Field& u0, const CutoffPair& cutoffs) {
  const double lip = lipschitz_norm(u0);
  const double b52 = besov_norm(u0, {2.5, 2.0, 1.0}, cutoffs);
  const double b72 = besov_norm(u0, {3.5, 2.0, 1.0}, cutoffs);
  return 1.0 + lip * lip * b52 + std::pow(lip, 4) * b72;
}

double h1_energy(const Field& u) { return parseval_h1(u, Multipliers(u.grid())); }

void SolverConfig::validate() const {
  if (!(final_time >= 0.0) || !std::isfinite(final_time)) throw std::invalid_argument("final time must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (!(blowup_threshold > 0.0)) throw std::invalid_argument("blow-up threshold must be positive");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()))
    throw std::invalid_argument("sample times must be sorted");
  for (double t : sample_times)
    if (t < 0.0 || t > final_time) throw std::invalid_argument("sample time outside [0, final_time]");
  for (const BesovIndex& idx : diagnostic_norms) idx.validate();
}

const TrajectorySample& Trajectory::at(double time) const {
  for (const TrajectorySample& s : samples)
    if (std::abs(s.time - time) <= 1e-12 * std::max(1.0, std::abs(time))) return s;
  throw std::out_of_range("no trajectory sample at t=" + std::to_string(time));
}

Trajectory evolve(const Field& u0, Model model, const SolverConfig& config, const CutoffPair* cutoffs) {
  config.validate();
  const Grid& grid = u0.grid();
  const Multipliers mult(grid);

  std::optional<CutoffPair> own_cutoffs;
  if (!config.diagnostic_norms.empty() && cutoffs == nullptr) cutoffs = &own_cutoffs.emplace(grid);

  std::vector<double> targets;
  for (double t : config.sample_times)
    if (t > 0.0 && (targets.empty() || t > targets.back())) targets.push_back(t);
  if (config.final_time > 0.0 && (targets.empty() || targets.back() < config.final_time))
    targets.push_back(config.final_time);

  auto make_sample = [&](double t, const Field& u) {
    TrajectorySample s{t, u, parseval_h1(u, mult), lipschitz_norm(u), {}};
    for (const BesovIndex& idx : config.diagnostic_norms) s.besov.push_back(besov_norm(u, idx, *cutoffs));
    return s;
  };

  auto rhs_of = [model](const Field& u) { return rhs(model, u); };

  Trajectory traj;
  traj.samples.push_back(make_sample(0.0, u0));
  const double e0 = traj.samples.front().h1_energy;

  Field u = u0;
  double t = 0.0;
  for (double target : targets) {
    while (t < target) {
      double dt = std::min(config.dt_max, config.cfl * grid.dx() / (1.0 + linf_norm(u)));
      bool land = false;
      if (t + dt >= target - 1e-12 * std::max(1.0, target)) {
        dt = target - t;
        land = true;
      }
      const Field k1 = rhs_of(u);
      const Field k2 = rhs_of(u + (0.5 * dt) * k1);
      const Field k3 = rhs_of(u + (0.5 * dt) * k2);
      const Field k4 = rhs_of(u + dt * k3);
      u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = land ? target : t + dt;
      ++traj.steps;

      const double slope = linf_norm(derivative(u, 1));
      if (!(slope <= config.blowup_threshold)) throw BlowUp(t, slope);
      if (e0 > 0.0) traj.max_h1_drift = std::max(traj.max_h1_drift, std::abs(parseval_h1(u, mult) - e0) / e0);
    }
    traj.samples.push_back(make_sample(target, u));
  }
  return traj;
}

}  // namespace besovlab
