#include <stdexcept>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "ptide/boundary.hpp"
#include "ptide/rng.hpp"

using namespace ptide;

TEST_CASE("dataset honors the far/near branch split and class sizes") {
  const auto data = gen_angle_dataset(7, 100);
  REQUIRE(data.points.size() == 200);
  int far0 = 0, near0 = 0, far1 = 0, near1 = 0;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    if (data.labels[i] == 0)
      (data.branch[i] == Branch::far_arm ? far0 : near0)++;
    else
      (data.branch[i] == Branch::far_arm ? far1 : near1)++;
  }
  CHECK(far0 == 75);
  CHECK(near0 == 25);
  CHECK(far1 == 75);
  CHECK(near1 == 25);
}

TEST_CASE("dataset generation is a pure function of the seed") {
  const auto a = gen_angle_dataset(1234, 16);
  const auto b = gen_angle_dataset(1234, 16);
  const auto c = gen_angle_dataset(1235, 16);
  REQUIRE(a.points.size() == b.points.size());
  bool identical = true, different = false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i] != b.points[i] || a.labels[i] != b.labels[i]) identical = false;
    if (a.points[i] != c.points[i]) different = true;
  }
  CHECK(identical);
  CHECK(different);
}

TEST_CASE("jitter-free samples lie exactly on the class arms") {
  AngleGeometry geom;
  geom.jitter = 0.0;
  const auto data = gen_angle_dataset(3, 40, geom);
  const double a = geom.angle_deg * std::numbers::pi / 180.0;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    double dx = data.points[i][0], dy = data.points[i][1];
    if (data.labels[i] == 1) {
      dx = -dx;                    // class 1 is the 180-degree rotation
      dy = geom.vertex_gap - dy;   // about its own vertex
    }
    const double r = std::hypot(dx, dy);
    const double radius =
        data.branch[i] == Branch::far_arm ? geom.far_radius : geom.near_radius;
    CHECK(r <= radius + 1e-12);
    CHECK(dy >= -1e-12);  // both arms open upward around the vertex
    // The point sits on one of the two rays at +/- angle from vertical.
    const double along = std::abs(dx) * std::sin(a) + dy * std::cos(a);
    const double across = std::abs(dx) * std::cos(a) - dy * std::sin(a);
    CHECK(std::abs(across) < 1e-12);
    CHECK(along == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("zero network starts at ln 2 loss with a balanced-batch null bias gradient") {
  MlpModel model;
  model.theta.assign(MlpModel::kParamCount, 0.0);
  const auto data = gen_angle_dataset(11, 32);
  const auto bw = mlp_backward(model, data.points, data.labels);
  CHECK(bw.loss == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(bw.grad[4 * MlpModel::kHidden]) < 1e-15);
}

TEST_CASE("analytic gradient matches central finite differences") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto data = gen_angle_dataset(seed, 12);
    const MlpModel model = MlpModel::init(seed + 50);
    const auto base = mlp_backward(model, data.points, data.labels);
    const double h = 1e-5;
    for (int j = 0; j < MlpModel::kParamCount; ++j) {
      MlpModel lo = model, hi = model;
      lo.theta[j] -= h;
      hi.theta[j] += h;
      const double fd = (mlp_backward(hi, data.points, data.labels).loss -
                         mlp_backward(lo, data.points, data.labels).loss) /
                        (2 * h);
      CAPTURE(seed);
      CAPTURE(j);
      CHECK(std::abs(fd - base.grad[j]) / std::max(1.0, std::abs(fd)) < 1e-4);
    }
  }
}

TEST_CASE("gradient of a hand-wired single-unit network matches the chain rule") {
  MlpModel model;
  model.theta.assign(MlpModel::kParamCount, 0.0);
  constexpr int H = MlpModel::kHidden;
  model.theta[0] = 0.7;        // w1: x1 -> unit 0
  model.theta[H] = -0.4;       // w1: x2 -> unit 0
  model.theta[2 * H] = 0.1;    // b1, unit 0
  model.theta[3 * H] = 1.3;    // w2, unit 0
  model.theta[4 * H] = -0.2;   // b2

  const std::vector<std::array<double, 2>> batch{{0.5, -1.0}};
  const std::vector<int> labels{1};
  const auto bw = mlp_backward(model, batch, labels);

  const double z1 = 0.7 * 0.5 - 0.4 * -1.0 + 0.1;  // 0.85, active
  const double z2 = 1.3 * z1 - 0.2;
  const double sig = 1.0 / (1.0 + std::exp(-z2));
  const double dz2 = sig - 1.0;
  CHECK(bw.loss == doctest::Approx(-std::log(sig)).epsilon(1e-14));
  CHECK(bw.grad[4 * H] == doctest::Approx(dz2).epsilon(1e-14));
  CHECK(bw.grad[3 * H] == doctest::Approx(dz2 * z1).epsilon(1e-14));
  CHECK(bw.grad[0] == doctest::Approx(dz2 * 1.3 * 0.5).epsilon(1e-14));
  CHECK(bw.grad[H] == doctest::Approx(dz2 * 1.3 * -1.0).epsilon(1e-14));
  CHECK(bw.grad[2 * H] == doctest::Approx(dz2 * 1.3).epsilon(1e-14));
  // Inactive units contribute nothing.
  CHECK(bw.grad[1] == 0.0);
  CHECK(bw.grad[3 * H + 1] == 0.0);
}

TEST_CASE("p = 0.5 training follows the Adam reference trajectory") {
  const auto data = gen_angle_dataset(derive_stream(42, 100), 50);
  BoundaryTrainConfig cfg;
  cfg.iterations = 200;
  cfg.checkpoints = {200};
  cfg.raster_resolution = 20;
  cfg.init_seed = derive_stream(42, 200);
  const auto run = train_boundary(data, PSchedule::constant(0.5), cfg);

  MlpModel model = MlpModel::init(cfg.init_seed);
  OptimState state(MlpModel::kParamCount);
  const double scale = static_cast<double>(data.points.size());
  for (int it = 1; it <= cfg.iterations; ++it) {
    auto bw = mlp_backward(model, data.points, data.labels);
    for (double& g : bw.grad) g *= scale;
    step_adam_reference(state, model.theta, bw.grad, cfg.opt);
  }
  for (int j = 0; j < MlpModel::kParamCount; ++j)
    CHECK(std::abs(run.final_model.theta[j] - model.theta[j]) < 1e-10);
}

TEST_CASE("training separates the arms quickly at p = 0") {
  const auto data = gen_angle_dataset(derive_stream(42, 100), 100);
  BoundaryTrainConfig cfg;
  cfg.raster_resolution = 50;
  cfg.init_seed = derive_stream(42, 200);
  const auto run = train_boundary(data, PSchedule::constant(0.0), cfg);
  const int t95 = run.first_iter_at(0.95);
  CHECK(t95 > 0);
  CHECK(t95 <= 200);
  CHECK(run.accuracy_curve.back().second >= 0.99);
  CHECK(run.checkpoints.size() == cfg.checkpoints.size());
}

TEST_CASE("raster cells agree with the model that produced them") {
  const auto data = gen_angle_dataset(derive_stream(9, 100), 24);
  BoundaryTrainConfig cfg;
  cfg.iterations = 50;
  cfg.checkpoints = {50};  // final checkpoint == final model
  cfg.raster_resolution = 40;
  cfg.init_seed = derive_stream(9, 200);
  const auto run = train_boundary(data, PSchedule::constant(0.25), cfg);
  const Raster& r = run.checkpoints.back().raster;
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int ix = static_cast<int>(rng.uniform(0, r.width));
    const int iy = static_cast<int>(rng.uniform(0, r.height));
    const auto [cx, cy] = r.cell_center(ix, iy);
    CHECK(r.class_at(ix, iy) == (run.final_model.logit(cx, cy) > 0.0 ? 1 : 0));
    const auto [jx, jy] = r.cell_of(cx, cy);
    CHECK(jx == ix);
    CHECK(jy == iy);
  }
}

TEST_CASE("top-30% mask has the right size per class and ranks by norm") {
  const auto data = gen_angle_dataset(13, 20);
  const MlpModel model = MlpModel::init(14);
  OptimState state(MlpModel::kParamCount);
  BoundaryTrainConfig cfg;
  const auto a = effective_update_norms(model, state, data, cfg, 0.25);
  const auto b = effective_update_norms(model, state, data, cfg, 0.25);
  CHECK(a.norms == b.norms);
  CHECK(a.top_mask == b.top_mask);

  for (int cls = 0; cls <= 1; ++cls) {
    int taken = 0;
    double min_in = 1e300, max_out = -1.0;
    for (std::size_t i = 0; i < a.norms.size(); ++i) {
      if (data.labels[i] != cls) continue;
      if (a.top_mask[i]) {
        ++taken;
        min_in = std::min(min_in, a.norms[i]);
      } else {
        max_out = std::max(max_out, a.norms[i]);
      }
    }
    CHECK(taken == 6);  // ceil(0.3 * 20)
    CHECK(min_in >= max_out);
  }
}

TEST_CASE("degenerate training inputs are rejected") {
  const auto data = gen_angle_dataset(1, 10);
  BoundaryTrainConfig cfg;
  cfg.checkpoints.clear();
  CHECK_THROWS_AS(train_boundary(data, PSchedule::constant(0.0), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_angle_dataset(1, 4), std::invalid_argument);
  MlpModel model = MlpModel::init(1);
  CHECK_THROWS_AS(mlp_backward(model, std::vector<std::array<double, 2>>{},
                               std::vector<int>{}),
                  std::invalid_argument);
}
