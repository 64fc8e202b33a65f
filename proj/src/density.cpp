#include "ptide/density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ptide {

void DensityDemoConfig::validate() const {
  if (!(std::abs(slope_m) < 1.0))
    throw std::invalid_argument("DensityDemoConfig: |slope_m| must be < 1 so rho > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("DensityDemoConfig: eta must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("DensityDemoConfig: eps must be > 0");
  if (n_grid < 2) throw std::invalid_argument("DensityDemoConfig: n_grid must be >= 2");
  if (n_steps <= 0) throw std::invalid_argument("DensityDemoConfig: n_steps must be > 0");
  if (!(eval_lo < eval_hi))
    throw std::invalid_argument("DensityDemoConfig: eval band must be nonempty");
  for (int c : checkpoints)
    if (c <= 0 || c > n_steps)
      throw std::invalid_argument("DensityDemoConfig: checkpoint " + std::to_string(c) +
                                  " outside (0, n_steps]");
}

double frmse(const std::vector<double>& x, const std::vector<double>& w, double lo,
             double hi) {
  double acc = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi) continue;
    const double rel = (w[i] - x[i]) / std::max(std::abs(x[i]), 1e-6);
    acc += rel * rel;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("frmse: no grid points inside eval band");
  return std::sqrt(acc / n);
}

DensityRunResult run_density_demo(const DensityDemoConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_grid;

  DensityRunResult res;
  res.x.resize(n);
  for (int i = 0; i < n; ++i) res.x[i] = static_cast<double>(i) / (n - 1);

  std::vector<double> w(n, 0.0);
  res.g_acc.assign(n, 0.0);
  std::vector<double> rho(n);
  for (int i = 0; i < n; ++i) rho[i] = cfg.rho(res.x[i]);

  for (int step = 1; step <= cfg.n_steps; ++step) {
    for (int i = 0; i < n; ++i) {
      const double g = 2.0 * rho[i] * (w[i] - res.x[i]);
      res.g_acc[i] += g * g;
      w[i] -= cfg.eta * std::pow(res.g_acc[i] + cfg.eps, -cfg.p) * g;
      if (std::abs(w[i]) > 1e6 || !std::isfinite(w[i]))
        throw std::runtime_error("run_density_demo: divergence at step " +
                                 std::to_string(step) + ", x=" + std::to_string(res.x[i]));
    }
    for (int c : cfg.checkpoints)
      if (c == step) res.w_snapshots[c] = w;
  }
  res.frmse_final = frmse(res.x, w, cfg.eval_lo, cfg.eval_hi);
  return res;
}

double closed_form_error(double x, double t, const DensityDemoConfig& cfg) {
  if (cfg.p == 1.0)
    throw std::invalid_argument("closed_form_error: p = 1 is not supported");
  if (x < 0.0 || x > 1.0 || t < 0.0)
    throw std::invalid_argument("closed_form_error: need x in [0,1], t >= 0");
  if (x == 0.0) return 0.0;
  const double f = 2.0 * cfg.eta / (1.0 - cfg.p) * std::pow(4.0, -cfg.p) *
                   std::pow(x, -2.0 * cfg.p) * std::pow(cfg.rho(x), 1.0 - 2.0 * cfg.p);
  return x * std::exp(-f * std::pow(t, 1.0 - cfg.p));
}

EarlyTimeReport verify_early_time(const DensityDemoConfig& cfg, double t_max) {
  cfg.validate();
  if (!(t_max >= 1.0))
    throw std::invalid_argument("verify_early_time: t_max must cover at least one step");

  // Calibration: the unit-step map at p=0, m=0 decays by (1 - eta) per step
  // while the continuum rate is exp(-eta). Measure the ratio from an actual
  // run rather than assuming the formula.
  EarlyTimeReport report;
  {
    DensityDemoConfig ref = cfg;
    ref.slope_m = 0.0;
    ref.p = 0.0;
    ref.checkpoints = {100};
    ref.n_steps = 100;
    const auto run = run_density_demo(ref);
    const int mid = (ref.n_grid - 1) / 2;  // x = 0.5
    const double x = run.x[mid];
    const double e_abs = std::abs(run.w_snapshots.at(100)[mid] - x);
    const double measured = -std::log(e_abs / x) / 100.0;
    const double predicted = 2.0 * ref.eta * ref.rho(x);
    report.calibration = measured / predicted;
  }

  const int steps = static_cast<int>(t_max);
  DensityDemoConfig run_cfg = cfg;
  run_cfg.n_steps = steps;
  run_cfg.checkpoints.clear();
  const int n_probes_t = 5;
  for (int i = 1; i <= n_probes_t; ++i)
    run_cfg.checkpoints.push_back(std::max(1, steps * i / n_probes_t));
  const auto run = run_density_demo(run_cfg);

  const double probe_xs[] = {0.3, 0.5, 0.9};
  for (double px : probe_xs) {
    const int idx =
        static_cast<int>(std::lround(px * (run_cfg.n_grid - 1)));
    const double x = run.x[idx];
    for (const auto& [step, w] : run.w_snapshots) {
      EarlyTimeProbe probe;
      probe.x = x;
      probe.t = static_cast<double>(step);
      probe.simulated = std::abs(w[idx] - x);
      const double raw = closed_form_error(x, probe.t, cfg);
      // Apply the calibration inside the exponent: |e| = x * (raw/x)^kappa.
      probe.closed_form = x * std::pow(raw / x, report.calibration);
      probe.in_regime = probe.simulated > 0.5 * x;
      probe.rel_dev = std::abs(probe.simulated - probe.closed_form) /
                      std::max(probe.closed_form, 1e-300);
      report.probes.push_back(probe);
    }
  }
  return report;
}

}  // namespace ptide
