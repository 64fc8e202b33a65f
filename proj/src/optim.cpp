#include "ptide/optim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ptide {

void OptimConfig::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("OptimConfig: eta must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0))
    throw std::invalid_argument("OptimConfig: beta1 must be in [0,1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0))
    throw std::invalid_argument("OptimConfig: beta2 must be in [0,1)");
  if (!(eps > 0.0) && !(eps_v > 0.0))
    throw std::invalid_argument("OptimConfig: eps and eps_v cannot both be zero");
  if (eps < 0.0 || eps_v < 0.0)
    throw std::invalid_argument("OptimConfig: eps and eps_v must be >= 0");
}

namespace {

void check_inputs(const OptimState& state, std::span<double> params,
                  std::span<const double> grad) {
  if (params.size() != grad.size() || params.size() != state.size()) {
    throw std::invalid_argument(
        "step: params/grad/state length mismatch (" + std::to_string(params.size()) +
        "/" + std::to_string(grad.size()) + "/" + std::to_string(state.size()) + ")");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::domain_error("step: non-finite gradient element");
  }
}

}  // namespace

void step(OptimState& state, std::span<double> params, std::span<const double> grad,
          const OptimConfig& cfg, double p) {
  check_inputs(state, params, grad);
  if (!std::isfinite(p)) throw std::domain_error("step: p must be finite");

  state.t += 1;
  const double bc1 = cfg.bias_correction ? 1.0 - std::pow(cfg.beta1, state.t) : 1.0;
  const double bc2 = cfg.bias_correction ? 1.0 - std::pow(cfg.beta2, state.t) : 1.0;

  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    // (v_hat + eps_v)^p via pow: pow(0, p>0) = 0, pow(0, p<0) = inf,
    // so the p < 0 update vanishes at v_hat = 0 instead of producing NaN.
    const double denom = std::pow(v_hat + cfg.eps_v, p) + cfg.eps;
    params[i] -= cfg.eta * m_hat / denom;
  }
}

void step_adam_reference(OptimState& state, std::span<double> params,
                         std::span<const double> grad, const OptimConfig& cfg) {
  check_inputs(state, params, grad);

  state.t += 1;
  const double bc1 = cfg.bias_correction ? 1.0 - std::pow(cfg.beta1, state.t) : 1.0;
  const double bc2 = cfg.bias_correction ? 1.0 - std::pow(cfg.beta2, state.t) : 1.0;

  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= cfg.eta * m_hat / (std::sqrt(v_hat + cfg.eps_v) + cfg.eps);
  }
}

}  // namespace ptide
