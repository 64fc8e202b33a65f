#include <stdexcept>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "ptide/fitops.hpp"
#include "ptide/rng.hpp"

using namespace ptide;

TEST_CASE("least squares recovers an exact line") {
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> ys{1.0, 3.0, 5.0, 7.0};
  const LinFit fit = ols(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.n_points == 4);
}

TEST_CASE("two points define the line exactly") {
  const LinFit fit = ols(std::vector<double>{1.0, 4.0}, std::vector<double>{-2.0, 7.0});
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(-5.0).epsilon(1e-14));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("noisy fit matches a long-double oracle") {
  SplitMix64 rng(31);
  std::vector<double> xs(200), ys(200);
  for (int i = 0; i < 200; ++i) {
    xs[i] = rng.uniform(-5.0, 5.0);
    ys[i] = 1.7 * xs[i] - 0.3 + 0.2 * rng.gaussian();
  }
  const LinFit fit = ols(xs, ys);

  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 200; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += static_cast<long double>(xs[i]) * xs[i];
    sxy += static_cast<long double>(xs[i]) * ys[i];
  }
  const long double n = 200.0L;
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double intercept = (sy - slope * sx) / n;
  CHECK(std::abs(fit.slope - static_cast<double>(slope)) < 1e-10);
  CHECK(std::abs(fit.intercept - static_cast<double>(intercept)) < 1e-10);
  CHECK(fit.r2 > 0.99);
}

TEST_CASE("fit transforms predictably under affine reparameterization") {
  SplitMix64 rng(41);
  std::vector<double> xs(50), ys(50), xs2(50), ys2(50);
  for (int i = 0; i < 50; ++i) {
    xs[i] = rng.uniform(0.0, 1.0);
    ys[i] = -0.8 * xs[i] + 0.1 * rng.gaussian();
    xs2[i] = 2.0 * xs[i] + 3.0;
    ys2[i] = -5.0 * ys[i] + 1.0;
  }
  const LinFit a = ols(xs, ys);
  const LinFit b = ols(xs2, ys2);
  CHECK(b.slope == doctest::Approx(-5.0 * a.slope / 2.0).epsilon(1e-9));
  CHECK(b.intercept ==
        doctest::Approx(-5.0 * a.intercept + 1.0 - b.slope * 3.0).epsilon(1e-8));
  CHECK(b.r2 == doctest::Approx(a.r2).epsilon(1e-12));
}

TEST_CASE("constant response gives r2 = 1 by convention") {
  const LinFit fit = ols(std::vector<double>{0.0, 1.0, 2.0}, std::vector<double>{4.0, 4.0, 4.0});
  CHECK(fit.slope == 0.0);
  CHECK(fit.r2 == 1.0);
}

TEST_CASE("degenerate inputs throw") {
  CHECK_THROWS_AS(ols(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ols(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ols(std::vector<double>{2.0, 2.0, 2.0}, std::vector<double>{1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("effective time matches the analytic integral for a linear energy ramp") {
  // A_bar(t) = t, p = 0.5, eps = 0.01:
  // tau(t) = integral (s + 0.01)^(-1/2) ds = 2 (sqrt(t + 0.01) - sqrt(0.01)).
  const double eps = 0.01;
  std::vector<double> ts, energy;
  for (int i = 0; i <= 800; ++i) {
    ts.push_back(i * 0.005);
    energy.push_back(ts.back());
  }
  const auto tau = effective_time(ts, energy, PSchedule::constant(0.5), eps);
  CHECK(tau.front() == 0.0);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    CHECK(tau[i] >= tau[i - 1]);
    const double exact = 2.0 * (std::sqrt(ts[i] + eps) - std::sqrt(eps));
    CHECK(tau[i] == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("effective time reduces to wall time at p = 0") {
  std::vector<double> ts, energy;
  for (int i = 0; i <= 100; ++i) {
    ts.push_back(i * 0.1);
    energy.push_back(std::sin(ts.back()) + 2.0);
  }
  const auto tau = effective_time(ts, energy, PSchedule::constant(0.0), 1e-8);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(tau[i] == doctest::Approx(ts[i]).epsilon(1e-12));
}

TEST_CASE("effective time validates its sample grid") {
  const PSchedule p0 = PSchedule::constant(0.0);
  CHECK_THROWS_AS(effective_time(std::vector<double>{0.1, 0.2}, std::vector<double>{1.0, 1.0},
                                 p0, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(effective_time(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0},
                                 p0, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(effective_time(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0}, p0,
                                 1e-8),
                  std::invalid_argument);
  CHECK(effective_time(std::vector<double>{}, std::vector<double>{}, p0, 1e-8).empty());
}
