#include "ptide/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptide/fitops.hpp"

namespace ptide {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> basis_fn(int k, const std::vector<double>& x) {
  std::vector<double> phi(x.size());
  const double root2 = std::numbers::sqrt2;
  for (std::size_t i = 0; i < x.size(); ++i) phi[i] = root2 * std::sin(kTwoPi * k * x[i]);
  return phi;
}

double grid_mean_product(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

}  // namespace

void SpectralConfig::validate() const {
  if (n_grid <= 0) throw std::invalid_argument("SpectralConfig: n_grid must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("SpectralConfig: dt must be > 0");
  if (n_steps <= 0) throw std::invalid_argument("SpectralConfig: n_steps must be > 0");
  if (!(eta >= 0.0)) throw std::invalid_argument("SpectralConfig: eta must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("SpectralConfig: eps must be > 0");
  if (record_stride <= 0)
    throw std::invalid_argument("SpectralConfig: record_stride must be > 0");
  if (modes.size() != amps.size())
    throw std::invalid_argument("SpectralConfig: modes/amps length mismatch");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] <= 0) throw std::invalid_argument("SpectralConfig: modes must be positive");
    if (2 * modes[i] >= n_grid)
      throw std::invalid_argument("SpectralConfig: mode " + std::to_string(modes[i]) +
                                  " violates the Nyquist limit for n_grid");
    for (std::size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j])
        throw std::invalid_argument("SpectralConfig: duplicate mode " +
                                    std::to_string(modes[i]));
  }
  schedule.validate();
}

std::vector<double> make_target(const SpectralConfig& cfg) {
  cfg.validate();
  std::vector<double> y(cfg.n_grid, 0.0);
  for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
    const double k = cfg.modes[m];
    const double a = cfg.amps[m];
    for (int i = 0; i < cfg.n_grid; ++i) {
      const double x = static_cast<double>(i) / cfg.n_grid;
      y[i] += a * std::sin(kTwoPi * k * x);
    }
  }
  return y;
}

SpectralField init_field(const SpectralConfig& cfg) {
  SpectralField f;
  f.x.resize(cfg.n_grid);
  for (int i = 0; i < cfg.n_grid; ++i) f.x[i] = static_cast<double>(i) / cfg.n_grid;
  const auto y = make_target(cfg);
  f.e.resize(cfg.n_grid);
  for (int i = 0; i < cfg.n_grid; ++i) f.e[i] = -y[i];
  f.g_acc.assign(cfg.n_grid, 0.0);
  f.t = 0.0;
  return f;
}

SpectralTrajectory evolve(SpectralField& field, const SpectralConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_grid;
  if (static_cast<int>(field.e.size()) != n)
    throw std::invalid_argument("evolve: field/config grid size mismatch");

  std::vector<std::vector<double>> phis;
  phis.reserve(cfg.modes.size());
  for (int k : cfg.modes) phis.push_back(basis_fn(k, field.x));

  SpectralTrajectory traj;
  traj.envelopes.resize(cfg.modes.size());
  for (std::size_t m = 0; m < cfg.modes.size(); ++m) traj.envelopes[m].k = cfg.modes[m];

  const double gf2 = cfg.grad_factor * cfg.grad_factor;

  for (int step = 0; step < cfg.n_steps; ++step) {
    const double p = cfg.schedule.p_at(field.t);

    if (cfg.accumulate_before_step) {
      for (int i = 0; i < n; ++i) field.g_acc[i] += cfg.dt * gf2 * field.e[i] * field.e[i];
      for (int i = 0; i < n; ++i) {
        const double eta_tilde = cfg.eta * std::pow(field.g_acc[i] + cfg.eps, -p);
        field.e[i] -= cfg.dt * 2.0 * eta_tilde * field.e[i];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const double eta_tilde = cfg.eta * std::pow(field.g_acc[i] + cfg.eps, -p);
        const double e_pre = field.e[i];
        field.e[i] -= cfg.dt * 2.0 * eta_tilde * e_pre;
        field.g_acc[i] += cfg.dt * gf2 * e_pre * e_pre;
      }
    }
    field.t = static_cast<double>(step + 1) * cfg.dt;

    double max_abs = 0.0;
    bool finite = true;
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(field.e[i])) finite = false;
      max_abs = std::max(max_abs, std::abs(field.e[i]));
    }
    if (!finite || !std::isfinite(max_abs))
      throw std::runtime_error("evolve: non-finite error field at step " +
                               std::to_string(step + 1) + ", max|e|=" + std::to_string(max_abs));

    if ((step + 1) % cfg.record_stride == 0) {
      traj.times.push_back(field.t);
      for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
        traj.envelopes[m].times.push_back(field.t);
        traj.envelopes[m].values.push_back(std::abs(grid_mean_product(field.e, phis[m])));
      }
      double gbar = 0.0;
      for (int i = 0; i < n; ++i) gbar += field.g_acc[i];
      traj.mean_energy.push_back(gbar / n);
    }
  }
  return traj;
}

DecayFit fit_decay(const ModeEnvelope& env, double p_fit, double t_lo, double t_hi,
                   double min_value) {
  std::vector<double> xs, ys;
  int dropped = 0;
  for (std::size_t i = 0; i < env.times.size(); ++i) {
    const double t = env.times[i];
    if (!(t > t_lo) || !(t <= t_hi)) continue;
    const double v = env.values[i];
    if (!(v > min_value)) {
      ++dropped;
      continue;
    }
    xs.push_back(p_fit == 1.0 ? std::log(t) : std::pow(t, 1.0 - p_fit));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3)
    throw std::runtime_error("fit_decay: fewer than 3 usable points in window for k=" +
                             std::to_string(env.k) + " (" + std::to_string(dropped) +
                             " dropped)");
  const LinFit lin = ols(xs, ys);
  DecayFit fit;
  fit.k = env.k;
  fit.c_k = -lin.slope;
  fit.intercept = lin.intercept;
  fit.r2 = lin.r2;
  fit.p_used = p_fit;
  fit.n_dropped = dropped;
  return fit;
}

std::vector<std::vector<double>> coupling_matrix(const SpectralField& field, double p_now,
                                                 const SpectralConfig& cfg) {
  const std::size_t nm = cfg.modes.size();
  std::vector<std::vector<double>> phis;
  phis.reserve(nm);
  for (int k : cfg.modes) phis.push_back(basis_fn(k, field.x));

  std::vector<double> weight(field.x.size());
  for (std::size_t i = 0; i < weight.size(); ++i)
    weight[i] = std::pow(field.g_acc[i] + cfg.eps, -p_now);

  std::vector<std::vector<double>> m(nm, std::vector<double>(nm, 0.0));
  for (std::size_t a = 0; a < nm; ++a) {
    for (std::size_t b = a; b < nm; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < weight.size(); ++i) s += weight[i] * phis[a][i] * phis[b][i];
      const double val = 2.0 * cfg.eta * s / static_cast<double>(weight.size());
      m[a][b] = val;
      m[b][a] = val;
    }
  }
  return m;
}

double overlap_integral(int k, int j, int n_grid) {
  if (k <= 0 || j <= 0) throw std::invalid_argument("overlap_integral: modes must be positive");
  if (2 * k >= n_grid || 2 * j >= n_grid)
    throw std::invalid_argument("overlap_integral: mode violates the Nyquist limit");
  double s = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double x = static_cast<double>(i) / n_grid;
    const double pk = std::numbers::sqrt2 * std::sin(kTwoPi * k * x);
    const double pj = std::numbers::sqrt2 * std::sin(kTwoPi * j * x);
    s += pk * pk * pj * pj;
  }
  return s / n_grid;
}

}  // namespace ptide
