#pragma once

#include <vector>

#include "ptide/schedule.hpp"

namespace ptide {

// 1D error-field evolution under the locality-modulated step
//   eta_tilde(x,t) = eta * (G(x,t) + eps)^(-p(t))
//   e <- e - dt * 2 * eta_tilde * e
// with G accumulating dt * (grad_factor * e)^2. By default the local
// gradient carries the factor 2 from d(e^2)/dw and G is charged before the
// step consumes it (the same ordering as the optimizer's second moment).
// Both conventions are configurable.
struct SpectralConfig {
  int n_grid = 4096;
  double dt = 0.005;
  int n_steps = 4000;
  double eta = 0.2;
  double eps = 1e-8;
  std::vector<int> modes{1, 2, 4, 8, 16, 32};
  std::vector<double> amps{1.0, 0.8, 0.6, 0.6, 0.5, 0.4};
  int record_stride = 10;
  PSchedule schedule = PSchedule::constant(0.0);

  double grad_factor = 2.0;
  bool accumulate_before_step = true;

  void validate() const;
};

struct SpectralField {
  std::vector<double> x;      // uniform grid on [0,1)
  std::vector<double> e;      // pointwise error
  std::vector<double> g_acc;  // accumulated squared gradient
  double t = 0.0;
};

struct ModeEnvelope {
  int k = 0;
  std::vector<double> times;
  std::vector<double> values;  // |<e, phi_k>|, phi_k = sqrt(2) sin(2 pi k x)
};

struct DecayFit {
  int k = 0;
  double c_k = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double p_used = 0.0;
  int n_dropped = 0;  // nonpositive/tiny samples excluded from the fit
};

struct SpectralTrajectory {
  std::vector<ModeEnvelope> envelopes;  // one per configured mode
  std::vector<double> times;
  std::vector<double> mean_energy;      // spatial mean of G at each record
};

// y[i] = sum_k a_k sin(2 pi k x_i)
std::vector<double> make_target(const SpectralConfig& cfg);

// Fresh field with e = -y (zero initial predictor) and G = 0.
SpectralField init_field(const SpectralConfig& cfg);

// Runs the forward-Euler evolution, recording envelopes every record_stride
// steps. Throws std::runtime_error with the step index if e goes non-finite.
SpectralTrajectory evolve(SpectralField& field, const SpectralConfig& cfg);

// OLS of log(values) against t^(1-p_fit) on the window (t_lo, t_hi]
// (log t for p_fit = 1); c_k is the negated slope. Samples <= min_value are
// dropped and counted in n_dropped. Throws std::runtime_error if fewer than
// 3 usable points remain.
DecayFit fit_decay(const ModeEnvelope& env, double p_fit, double t_lo = 0.0,
                   double t_hi = 6.0, double min_value = 1e-14);

// M[k][j] = 2*eta * mean_i[(G_i + eps)^(-p_now) * phi_k(x_i) * phi_j(x_i)]
// over the configured modes.
std::vector<std::vector<double>> coupling_matrix(const SpectralField& field, double p_now,
                                                 const SpectralConfig& cfg);

// Grid mean of phi_k^2 * phi_j^2: 3/2 on the diagonal, 1 off it.
double overlap_integral(int k, int j, int n_grid);

}  // namespace ptide
