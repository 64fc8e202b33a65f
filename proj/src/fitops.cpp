#include "ptide/fitops.hpp"

#include <cmath>
#include <stdexcept>

namespace ptide {

LinFit ols(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("ols: length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("ols: need at least 2 points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  // Centered accumulation keeps the normal equations well conditioned.
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols: degenerate regressor (xs all identical)");

  LinFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = static_cast<int>(n);

  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
    const double d = ys[i] - my;
    ss_tot += d * d;
  }
  fit.r2 = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

std::vector<double> effective_time(std::span<const double> ts,
                                   std::span<const double> mean_energy,
                                   const PSchedule& p_of_t, double eps) {
  if (ts.size() != mean_energy.size())
    throw std::invalid_argument("effective_time: length mismatch");
  if (ts.empty()) return {};
  if (ts[0] != 0.0) throw std::invalid_argument("effective_time: ts must start at 0");

  std::vector<double> tau(ts.size());
  tau[0] = 0.0;
  double prev_f = std::pow(mean_energy[0] + eps, -p_of_t.p_at(ts[0]));
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1]))
      throw std::invalid_argument("effective_time: ts must be strictly increasing");
    const double f = std::pow(mean_energy[i] + eps, -p_of_t.p_at(ts[i]));
    tau[i] = tau[i - 1] + 0.5 * (prev_f + f) * (ts[i] - ts[i - 1]);
    prev_f = f;
  }
  return tau;
}

}  // namespace ptide
