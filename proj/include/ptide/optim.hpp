#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ptide {

// Hyperparameters for the unified update
//   theta <- theta - eta * m_hat / ((v_hat + eps_v)^p + eps).
//
// eps sits outside the exponentiation, eps_v floors v_hat before it.
// Setting eps_v = eps and eps = 0 reproduces the (G + eps)^(-p) form used
// by the field-evolution experiments.
struct OptimConfig {
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double eps_v = 0.0;
  bool bias_correction = true;

  void validate() const;  // throws std::invalid_argument on bad ranges
};

// Per-parameter-vector moment accumulators. m = v = 0, t = 0 at init;
// t increments by exactly one per accepted step.
struct OptimState {
  std::vector<double> m;
  std::vector<double> v;
  long t = 0;

  explicit OptimState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
  std::size_t size() const { return m.size(); }
};

// One optimizer step with exponent p. Throws std::invalid_argument on a
// length mismatch and std::domain_error if any gradient element is not
// finite; in both cases params and state are left untouched.
void step(OptimState& state, std::span<double> params, std::span<const double> grad,
          const OptimConfig& cfg, double p);

// Textbook Adam path, m_hat / (sqrt(v_hat) + eps). Kept as an independent
// reference for the p = 0.5 identity; same contract as step().
void step_adam_reference(OptimState& state, std::span<double> params,
                         std::span<const double> grad, const OptimConfig& cfg);

}  // namespace ptide
