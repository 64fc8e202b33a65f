#pragma once

#include <map>
#include <vector>

namespace ptide {

// Discrete 1D regression toward y(x) = x under the sample density
// rho(x) = m*(x - 0.5) + 0.5, one unit time step per iteration:
//   g = 2 * rho * (w - x);  G += g^2;  w -= eta * (G + eps)^(-p) * g
struct DensityDemoConfig {
  double slope_m = 0.0;  // must satisfy |m| < 1 so rho > 0 on [0,1]
  double p = 0.0;
  double eta = 0.01;
  double eps = 1e-8;
  int n_grid = 257;  // inclusive grid on [0,1]
  int n_steps = 3000;
  std::vector<int> checkpoints{200, 500, 1000, 2000, 3000};
  double eval_lo = 0.8;
  double eval_hi = 1.0;

  void validate() const;
  double rho(double x) const { return slope_m * (x - 0.5) + 0.5; }
};

struct DensityRunResult {
  std::vector<double> x;                            // grid
  std::map<int, std::vector<double>> w_snapshots;   // checkpoint -> w(x)
  double frmse_final = 0.0;                         // over the eval band, final step only
  std::vector<double> g_acc;
};

DensityRunResult run_density_demo(const DensityDemoConfig& cfg);

// fRMSE of w against the target over [lo, hi]: RMS of (w - x)/max(|x|, 1e-6).
double frmse(const std::vector<double>& x, const std::vector<double>& w, double lo, double hi);

// Analytic early-time envelope |e(x,t)| = x * exp(-F * t^(1-p)) with
// F = (2*eta/(1-p)) * 4^(-p) * x^(-2p) * rho(x)^(1-2p).
// Throws std::invalid_argument for p = 1; returns 0 at x = 0 for p > 0.
double closed_form_error(double x, double t, const DensityDemoConfig& cfg);

struct EarlyTimeProbe {
  double x = 0.0;
  double t = 0.0;
  double simulated = 0.0;    // |w - x| from the discrete run
  double closed_form = 0.0;  // calibrated analytic envelope
  double rel_dev = 0.0;
  bool in_regime = true;     // false once the error has decayed by > 50%
};

struct EarlyTimeReport {
  std::vector<EarlyTimeProbe> probes;
  double calibration = 1.0;  // discrete-vs-continuum rate factor from p=0, m=0
};

// Cross-checks the discrete run against the closed form at probe points
// x in {0.3, 0.5, 0.9} for t <= t_max. The calibration factor is measured
// from a p=0, m=0 run before comparing.
EarlyTimeReport verify_early_time(const DensityDemoConfig& cfg, double t_max);

}  // namespace ptide
