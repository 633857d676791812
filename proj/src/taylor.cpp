#include <algorithm>
#include <cmath>

#include "besovlab/harness.hpp"

namespace besovlab {
namespace {

const BesovIndex kCritical{1.5, 2.0, 1.0};

std::vector<double> geometric_ladder(double lo, double hi, int points) {
  std::vector<double> t(points);
  for (int k = 0; k < points; ++k) t[k] = lo * std::pow(hi / lo, double(k) / (points - 1));
  t.back() = hi;
  return t;
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const Index n = Index(x.size());
  Eigen::ArrayXd lx(n), ly(n);
  for (Index i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const Eigen::ArrayXd cx = lx - lx.mean();
  return (cx * (ly - ly.mean())).sum() / cx.square().sum();
}

struct Datum {
  std::string label;
  int n;
  Field u0;
  double perturbation_norm;
};

}  // namespace

Field smooth_profile(const Grid& grid) {
  return Field::from_function(grid, [](double x) { return 0.5 * std::exp(-0.5 * x * x); });
}

ExperimentReport run_taylor_check(const ExperimentConfig& config) {
  config.validate();
  const Model model = config.model;
  const bool ch = model == Model::kCamassaHolm;
  const std::string model_name(to_string(model));
  const Grid grid = config.grid.make();
  const CutoffPair cutoffs(grid);
  const std::vector<double> ladder = geometric_ladder(config.t_min, config.t_max, config.points);

  SolverConfig solver = config.solver;
  solver.final_time = ladder.back();
  solver.sample_times = ladder;

  ExperimentReport report;
  report.command = "taylor";
  report.config = to_json(config);

  std::vector<Datum> data;
  data.push_back({"smooth", 0, smooth_profile(grid), 0.0});
  {
    const BumpProfile bump = build_bump(grid);
    const SequenceTriple seq = make_sequences(bump, config.taylor_n);
    const Field& pert = ch ? seq.g : seq.h;
    data.push_back({"sequence_n" + std::to_string(config.taylor_n), config.taylor_n, seq.f + pert,
                    besov_norm(pert, kCritical, cutoffs)});
  }

  for (const Datum& datum : data) {
    Experiment exp;
    exp.name = "taylor_" + model_name + "_" + datum.label;
    try {
      const double functional = ch ? functional_E(datum.u0, cutoffs) : functional_F(datum.u0, cutoffs);
      const Field velocity = rhs(model, datum.u0);
      const Trajectory traj = evolve(datum.u0, model, solver);
      const double e0 = traj.samples.front().h1_energy;
      const double lip0 = lipschitz_norm(datum.u0);
      exp.scalars["functional"] = functional;
      exp.scalars["steps"] = double(traj.steps);
      exp.scalars["max_h1_drift"] = traj.max_h1_drift;

      std::vector<double> remainders;
      std::vector<double> rates;
      Series& series = exp.series["remainder_" + model_name + "_" + datum.label];
      for (double t : ladder) {
        const TrajectorySample& s = traj.at(t);
        const Field increment = s.u - datum.u0;
        const double r = besov_norm(increment - t * velocity, kCritical, cutoffs);
        const double rate = besov_norm(increment, kCritical, cutoffs) / t;
        remainders.push_back(r);
        rates.push_back(rate);
        series.emplace_back(t, r);

        ExperimentRow row{model_name, datum.n, t, r, r / (t * t * functional), datum.perturbation_norm,
                          std::abs(s.h1_energy - e0) / e0, true, {}};
        row.extra["first_order_rate"] = rate;
        row.extra["linf_rate"] = linf_norm(increment) / (t * std::max(lip0, 1e-300));
        exp.rows.push_back(std::move(row));
      }

      const Check slope = Check::within("remainder_slope", loglog_slope(ladder, remainders), 1.9, 2.1);
      const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
      const Check spread = Check::at_most("first_order_rate_spread", *hi / *lo, 1.5);
      for (ExperimentRow& row : exp.rows) row.verdict = slope.pass && spread.pass;
      exp.checks.push_back(slope);
      exp.checks.push_back(spread);
      exp.checks.push_back(Check::at_most("h1_drift", traj.max_h1_drift, kH1DriftTolerance));
    } catch (const Error& e) {
      exp.errors.push_back(e.what());
    }
    report.experiments.push_back(std::move(exp));
  }

  // The zero datum is a fixed point of both flows, so the remainder vanishes.
  {
    const Field zero = Field::zeros(grid);
    const Trajectory traj = evolve(zero, model, solver);
    double worst = 0.0;
    for (double t : ladder) worst = std::max(worst, besov_norm(traj.at(t).u - zero, kCritical, cutoffs));
    report.checks.push_back(Check::at_most("zero_datum_remainder", worst, 0.0));
  }
  return report;
}

}  // namespace besovlab
