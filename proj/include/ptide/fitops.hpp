#pragma once

#include <span>
#include <vector>

#include "ptide/schedule.hpp"

namespace ptide {

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int n_points = 0;
};

// Ordinary least squares of ys against xs (with intercept).
// r2 = 1 - SS_res/SS_tot; a zero-residual fit on constant ys gives r2 = 1.
// Throws std::invalid_argument on length mismatch or < 2 points, and on a
// degenerate (all-identical) regressor.
LinFit ols(std::span<const double> xs, std::span<const double> ys);

// Effective time tau(t) = integral_0^t (A_bar(s) + eps)^(-p(s)) ds,
// trapezoidal rule on the sample points. ts must be strictly increasing
// and start at 0; the result starts at tau(0) = 0 and is nondecreasing.
std::vector<double> effective_time(std::span<const double> ts,
                                   std::span<const double> mean_energy,
                                   const PSchedule& p_of_t, double eps);

}  // namespace ptide
