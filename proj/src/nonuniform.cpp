#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "besovlab/harness.hpp"

namespace besovlab {
namespace {

const BesovIndex kCritical{1.5, 2.0, 1.0};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string tag(double t) { return format_number(t); }

// Terms of S_t(u0^n) - S_t(f_n) at first order in t.
struct Decomposition {
  double lead = 0.0;       // g d_x f  (CH)   or  h^2 d_x f   (Novikov), B^{3/2}_{2,1}
  double cross = 0.0;      // 0        (CH)   or  2 f h d_x f
  double transport = 0.0;  // u0 d_x g (CH)   or  u0^2 d_x h
  double nonlocal = 0.0;   // P(u0) - P(f)    or  Q(u0) - Q(f)
  double identity_residual = 0.0;
};

Decomposition decompose(Model model, const SequenceTriple& seq, const CutoffPair& cutoffs) {
  Decomposition d;
  const Field fx = derivative(seq.f, 1);
  if (model == Model::kCamassaHolm) {
    const Field u0 = seq.f + seq.g;
    const Field lead = dealias_product(seq.g, fx);
    const Field transport = dealias_product(u0, derivative(seq.g, 1));
    d.lead = besov_norm(lead, kCritical, cutoffs);
    d.transport = besov_norm(transport, kCritical, cutoffs);
    d.nonlocal = besov_norm(p_operator(u0) - p_operator(seq.f), kCritical, cutoffs);
    // u0 d_x u0 - f d_x f = g d_x f + u0 d_x g
    const Field lhs = dealias_product(u0, derivative(u0, 1)) - dealias_product(seq.f, fx);
    d.identity_residual = linf_norm(lhs - lead - transport) / std::max(linf_norm(lhs), 1e-300);
  } else {
    const Field u0 = seq.f + seq.h;
    const Field lead = dealias_product({seq.h, seq.h, fx});
    const Field cross = 2.0 * dealias_product({seq.f, seq.h, fx});
    const Field hx = derivative(seq.h, 1);
    const Field transport = dealias_product({u0, u0, hx});
    d.lead = besov_norm(lead, kCritical, cutoffs);
    d.cross = besov_norm(cross, kCritical, cutoffs);
    d.transport = besov_norm(transport, kCritical, cutoffs);
    d.nonlocal = besov_norm(q_operator(u0) - q_operator(seq.f), kCritical, cutoffs);
    // u0^2 d_x u0 - f^2 d_x f = h^2 d_x f + 2 f h d_x f + u0^2 d_x h
    const Field ux = derivative(u0, 1);
    const Field lhs = dealias_product({u0, u0, ux}) - dealias_product({seq.f, seq.f, fx});
    d.identity_residual = linf_norm(lhs - lead - cross - transport) / std::max(linf_norm(lhs), 1e-300);
  }
  return d;
}

}  // namespace

double discover_t0(const Field& u0, Model model, const SolverConfig& solver, double t_hi) {
  auto runs_cleanly = [&](double final_time) {
    SolverConfig s = solver;
    s.final_time = final_time;
    s.sample_times.clear();
    s.diagnostic_norms.clear();
    try {
      return evolve(u0, model, s).max_h1_drift < kH1DriftTolerance;
    } catch (const BlowUp&) {
      return false;
    } catch (const InvalidField&) {
      return false;
    }
  };
  if (runs_cleanly(t_hi)) return 0.8 * t_hi;
  double lo = 0.0;
  double hi = t_hi;
  for (int it = 0; it < 8; ++it) {
    const double mid = 0.5 * (lo + hi);
    (runs_cleanly(mid) ? lo : hi) = mid;
  }
  return 0.8 * lo;
}

ExperimentReport run_nonuniform(const ExperimentConfig& config) {
  config.validate();
  const Model model = config.model;
  const bool ch = model == Model::kCamassaHolm;
  const Grid grid = config.grid.make();
  const CutoffPair cutoffs(grid);
  const BumpProfile bump = build_bump(grid);
  const LowerBoundLimits limits = lower_bound_limits(bump);
  const double limit = ch ? limits.m1 : limits.m2;

  const std::vector<double> times = sorted_unique(config.t_values);
  SolverConfig solver = config.solver;
  if (solver.final_time <= 0.0) solver.final_time = times.back();
  solver.sample_times = times;

  ExperimentReport report;
  report.command = "nonuniform";
  report.config = to_json(config);
  report.scalars["limit"] = limit;
  report.scalars["m1"] = limits.m1;
  report.scalars["m2"] = limits.m2;
  report.scalars["bump_tail"] = bump.tail();
  report.scalars["phi0"] = bump.phi0();

  Experiment exp;
  exp.name = "nonuniform_" + std::string(to_string(model));

  // T0 from the initial datum with the largest critical norm.
  {
    double best = -1.0;
    std::optional<Field> largest;
    for (int n : config.n_values) {
      const SequenceTriple seq = make_sequences(bump, n);
      Field u0 = seq.f + (ch ? seq.g : seq.h);
      const double norm = besov_norm(u0, kCritical, cutoffs);
      if (norm > best) {
        best = norm;
        largest.emplace(std::move(u0));
      }
    }
    const double t0 = discover_t0(*largest, model, solver, times.back() / 0.8);
    report.scalars["T0"] = t0;
    exp.checks.push_back(Check::at_most("t_values_within_T0", times.back(), t0 * (1.0 + 1e-12)));
  }

  std::map<int, double> perturbation_norms;
  std::map<double, double> min_rate;  // t -> min_n D_n(t)/t
  double max_drift = 0.0;

  for (int n : config.n_values) {
    try {
      const SequenceTriple seq = make_sequences(bump, n);
      const Field& perturbation = ch ? seq.g : seq.h;
      const Field u0 = seq.f + perturbation;
      const Field initial_gap = u0 - seq.f;
      const double pert_norm = besov_norm(perturbation, kCritical, cutoffs);
      perturbation_norms[n] = pert_norm;

      const Decomposition dec = decompose(model, seq, cutoffs);
      const std::string ns = "n" + std::to_string(n);
      exp.scalars[ns + "_lead"] = dec.lead;
      exp.scalars[ns + "_cross"] = dec.cross;
      exp.scalars[ns + "_transport"] = dec.transport;
      exp.scalars[ns + "_nonlocal"] = dec.nonlocal;
      exp.scalars[ns + "_identity_residual"] = dec.identity_residual;
      exp.checks.push_back(Check::at_most(ns + "_decomposition_identity", dec.identity_residual, 1e-10));
      if (ch && n >= 6)
        exp.checks.push_back(Check::at_least(ns + "_lead_term_dominance", dec.lead / (dec.transport + dec.nonlocal),
                                             kDominanceFactor));

      const Trajectory traj_u = evolve(u0, model, solver);
      const Trajectory traj_f = evolve(seq.f, model, solver);
      const double e_u = traj_u.samples.front().h1_energy;
      const double e_f = traj_f.samples.front().h1_energy;

      Series& series = exp.series["Dn_vs_t_n" + std::to_string(n)];
      const double d0 = besov_norm(initial_gap, kCritical, cutoffs);
      series.emplace_back(0.0, d0);
      ExperimentRow row0{std::string(to_string(model)), n, 0.0, d0, std::numeric_limits<double>::quiet_NaN(),
                         pert_norm, 0.0, std::abs(d0 - pert_norm) <= 1e-12 * pert_norm, {}};
      exp.checks.push_back(Check::at_most(ns + "_t0_gap_equals_perturbation", std::abs(d0 - pert_norm) / pert_norm,
                                          1e-12));
      exp.rows.push_back(std::move(row0));

      for (double t : times) {
        const TrajectorySample& su = traj_u.at(t);
        const TrajectorySample& sf = traj_f.at(t);
        const Field diff = su.u - sf.u;
        const double d = besov_norm(diff, kCritical, cutoffs);
        const double increment = besov_norm(diff - initial_gap, kCritical, cutoffs);
        const double drift = std::max(std::abs(su.h1_energy - e_u) / e_u, std::abs(sf.h1_energy - e_f) / e_f);
        max_drift = std::max(max_drift, drift);

        const double rate = d / t;
        const double window = d / (t * dec.lead);
        const Check window_check =
            Check::within(ns + "_t" + tag(t) + "_lead_ratio", window, kRatioLow, kRatioHigh);
        exp.checks.push_back(window_check);

        ExperimentRow row{std::string(to_string(model)), n, t, d, rate, pert_norm, drift,
                          rate >= kLowerBoundFraction * limit && window_check.pass, {}};
        row.extra["lead_ratio"] = window;
        row.extra["increment"] = increment;
        row.extra["increment_ratio"] = increment / (t * dec.lead);
        row.extra["lead_term"] = t * dec.lead;
        exp.rows.push_back(std::move(row));
        series.emplace_back(t, d);

        auto [it, inserted] = min_rate.emplace(t, rate);
        if (!inserted) it->second = std::min(it->second, rate);
      }
    } catch (const Error& e) {
      exp.errors.push_back("n=" + std::to_string(n) + ": " + e.what());
    }
  }

  const double expected_ratio = ch ? 0.5 : 1.0 / std::sqrt(2.0);
  double ratio_defect = 0.0;
  for (auto it = perturbation_norms.begin(); it != perturbation_norms.end(); ++it) {
    auto next = std::next(it);
    if (next == perturbation_norms.end()) break;
    const double per_step = std::pow(next->second / it->second, 1.0 / (next->first - it->first));
    ratio_defect = std::max(ratio_defect, std::abs(per_step - expected_ratio) / expected_ratio);
  }
  exp.checks.push_back(Check::at_most("perturbation_geometric_decay", ratio_defect, 1e-10));
  for (const auto& [t, rate] : min_rate)
    exp.checks.push_back(Check::at_least("t" + tag(t) + "_min_rate_vs_limit", rate, kLowerBoundFraction * limit));
  exp.checks.push_back(Check::at_most("h1_drift", max_drift, kH1DriftTolerance));

  report.experiments.push_back(std::move(exp));
  return report;
}

ExperimentReport run_lemma31(const ExperimentConfig& config) {
  config.validate();
  const Grid grid = config.grid.make();
  const CutoffPair cutoffs(grid);
  const BumpProfile bump = build_bump(grid);
  const LowerBoundLimits limits = lower_bound_limits(bump);

  ExperimentReport report;
  report.command = "lemma31";
  report.config = to_json(config);
  report.scalars["m1"] = limits.m1;
  report.scalars["m2"] = limits.m2;
  report.scalars["phi0"] = bump.phi0();
  report.scalars["phi_linf"] = linf_norm(bump.phi());
  report.scalars["bump_tail"] = bump.tail();

  Experiment exp;
  exp.name = "lemma31";
  std::map<std::string, std::vector<double>> rescaled;
  std::vector<int> ns = config.n_values;
  std::sort(ns.begin(), ns.end());

  std::map<int, Lemma31Report> reports;
  for (int n : ns) {
    try {
      Lemma31Report rep = verify_lemma31(bump, n, cutoffs);
      const double nd = n;
      rescaled["f_linf"].push_back(std::pow(2.0, 1.5 * nd) * rep.f_linf);
      rescaled["f_slope_linf"].push_back(std::pow(2.0, 0.5 * nd) * rep.f_slope_linf);
      rescaled["g_linf"].push_back(std::pow(2.0, nd) * rep.g_linf);
      rescaled["g_slope_linf"].push_back(std::pow(2.0, nd) * rep.g_slope_linf);
      rescaled["h_linf"].push_back(std::pow(2.0, 0.5 * nd) * rep.h_linf);
      rescaled["h_slope_linf"].push_back(std::pow(2.0, 0.5 * nd) * rep.h_slope_linf);
      rescaled["g_besov"].push_back(std::pow(2.0, nd + 1.5) * rep.g_besov);
      rescaled["h_besov"].push_back(std::pow(2.0, 0.5 * nd + 1.5) * rep.h_besov);
      const double sigmas[] = {1.5, 2.5, 3.5};
      for (size_t k = 0; k < 3; ++k)
        rescaled["f_besov_s" + format_number(sigmas[k])].push_back(std::pow(2.0, (1.5 - sigmas[k]) * nd) *
                                                                     rep.f_besov[k]);

      for (const Check& c : rep.checks) {
        Check prefixed = c;
        prefixed.name = "n" + std::to_string(n) + "_" + c.name;
        exp.checks.push_back(prefixed);
      }

      ExperimentRow g_row{"ch", n, 0.0, rep.g_product_besov, rep.g_product_besov / limits.m1, rep.g_besov, 0.0,
                          rep.all_pass(), {}};
      g_row.extra["f_linf"] = rep.f_linf;
      g_row.extra["f_slope_linf"] = rep.f_slope_linf;
      g_row.extra["g_product_besov21"] = rep.g_product_besov21;
      g_row.extra["snap_error"] = rep.snap_error;
      for (size_t k = 0; k < rep.f_besov.size(); ++k) g_row.extra["f_besov_" + std::to_string(k)] = rep.f_besov[k];
      ExperimentRow h_row{"novikov", n, 0.0, rep.h_product_besov, rep.h_product_besov / limits.m2, rep.h_besov, 0.0,
                          rep.all_pass(), {}};
      h_row.extra["localization_residual"] = rep.localization_residual;
      h_row.extra["first_ring"] = rep.product_rings.empty() ? -2 : rep.product_rings.front();
      h_row.extra["last_ring"] = rep.product_rings.empty() ? -2 : rep.product_rings.back();
      exp.rows.push_back(std::move(g_row));
      exp.rows.push_back(std::move(h_row));
      exp.series["g_product_vs_n"].emplace_back(n, rep.g_product_besov);
      exp.series["h_product_vs_n"].emplace_back(n, rep.h_product_besov);
      reports.emplace(n, std::move(rep));
    } catch (const Error& e) {
      exp.errors.push_back("n=" + std::to_string(n) + ": " + e.what());
    }
  }

  for (const auto& [name, values] : rescaled) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    exp.checks.push_back(Check::at_most("scaling_spread_" + name, *hi / *lo, 1.5));
  }
  for (const char* name : {"g_besov", "h_besov"}) {
    const std::vector<double>& v = rescaled[name];
    double spread = 0.0;
    for (double x : v) spread = std::max(spread, std::abs(x - v.front()) / v.front());
    exp.checks.push_back(Check::at_most(std::string("exact_scaling_") + name, spread, 1e-10));
  }
  if (!reports.empty()) {
    const auto& [n_top, top] = *reports.rbegin();
    const std::string suffix = "_n" + std::to_string(n_top);
    exp.checks.push_back(
        Check::at_most("g_fx_limit_gap" + suffix, std::abs(top.g_product_besov - limits.m1) / limits.m1, 0.05));
    exp.checks.push_back(
        Check::at_most("h2_fx_limit_gap" + suffix, std::abs(top.h_product_besov - limits.m2) / limits.m2, 0.05));
  }
  report.experiments.push_back(std::move(exp));
  return report;
}

}  // namespace besovlab
