#include "ptide/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptide/rng.hpp"

namespace ptide {

AngleDataset gen_angle_dataset(std::uint64_t seed, int n_per_class,
                               const AngleGeometry& geom) {
  if (n_per_class < 8)
    throw std::invalid_argument("gen_angle_dataset: n_per_class must be >= 8");

  const double a = geom.angle_deg * std::numbers::pi / 180.0;
  const double sa = std::sin(a), ca = std::cos(a);

  AngleDataset data;
  data.seed = seed;
  SplitMix64 rng(derive_stream(seed, /*stream_id=*/0x01));

  const int n_far = static_cast<int>(std::llround(geom.far_fraction * n_per_class));
  const int n_near = n_per_class - n_far;

  auto emit_class = [&](int label, double vx, double vy, double sgn) {
    const double far_dir[2] = {sgn * sa, sgn * ca};
    const double near_dir[2] = {-sgn * sa, sgn * ca};
    struct Arm {
      const double* dir;
      double radius;
      int count;
      Branch tag;
    };
    const Arm arms[2] = {{far_dir, geom.far_radius, n_far, Branch::far_arm},
                         {near_dir, geom.near_radius, n_near, Branch::near_arm}};
    for (const Arm& arm : arms) {
      for (int i = 0; i < arm.count; ++i) {
        const double t = rng.next_double() * arm.radius;
        const double jx = geom.jitter * rng.gaussian();
        const double jy = geom.jitter * rng.gaussian();
        data.points.push_back({vx + t * arm.dir[0] + jx, vy + t * arm.dir[1] + jy});
        data.labels.push_back(label);
        data.branch.push_back(arm.tag);
      }
    }
  };

  emit_class(0, 0.0, 0.0, +1.0);
  emit_class(1, 0.0, geom.vertex_gap, -1.0);
  return data;
}

MlpModel MlpModel::init(std::uint64_t seed, double weight_scale) {
  MlpModel model;
  model.theta.assign(kParamCount, 0.0);
  SplitMix64 rng(derive_stream(seed, /*stream_id=*/0x02));
  for (int i = 0; i < 2 * kHidden; ++i) model.theta[i] = weight_scale * rng.gaussian();
  for (int h = 0; h < kHidden; ++h)
    model.theta[3 * kHidden + h] = weight_scale * rng.gaussian();
  return model;
}

double MlpModel::logit(double x1, double x2) const {
  const double* w1 = theta.data();
  const double* b1 = theta.data() + 2 * kHidden;
  const double* w2 = theta.data() + 3 * kHidden;
  double z2 = theta[4 * kHidden];
  for (int h = 0; h < kHidden; ++h) {
    const double z1 = x1 * w1[h] + x2 * w1[kHidden + h] + b1[h];
    if (z1 > 0.0) z2 += z1 * w2[h];
  }
  return z2;
}

std::vector<double> mlp_forward(const MlpModel& model,
                                std::span<const std::array<double, 2>> batch) {
  std::vector<double> logits(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    logits[i] = model.logit(batch[i][0], batch[i][1]);
  return logits;
}

BackwardResult mlp_backward(const MlpModel& model,
                            std::span<const std::array<double, 2>> batch,
                            std::span<const int> labels) {
  if (batch.size() != labels.size())
    throw std::invalid_argument("mlp_backward: batch/labels length mismatch");
  if (batch.empty()) throw std::invalid_argument("mlp_backward: empty batch");

  constexpr int H = MlpModel::kHidden;
  const double* w1 = model.theta.data();
  const double* b1 = model.theta.data() + 2 * H;
  const double* w2 = model.theta.data() + 3 * H;

  BackwardResult res;
  res.grad.assign(MlpModel::kParamCount, 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  double z1[H], a1[H];
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const double x1 = batch[s][0], x2 = batch[s][1];
    double z2 = model.theta[4 * H];
    for (int h = 0; h < H; ++h) {
      z1[h] = x1 * w1[h] + x2 * w1[H + h] + b1[h];
      a1[h] = z1[h] > 0.0 ? z1[h] : 0.0;
      z2 += a1[h] * w2[h];
    }
    const double y = static_cast<double>(labels[s]);
    // Numerically stable BCE-with-logits: max(z,0) - z*y + log(1+exp(-|z|)).
    res.loss += (std::max(z2, 0.0) - z2 * y + std::log1p(std::exp(-std::abs(z2)))) * inv_n;

    const double sig = 1.0 / (1.0 + std::exp(-z2));
    const double dz2 = (sig - y) * inv_n;
    res.grad[4 * H] += dz2;
    for (int h = 0; h < H; ++h) {
      res.grad[3 * H + h] += dz2 * a1[h];
      if (z1[h] > 0.0) {
        const double dz1 = dz2 * w2[h];
        res.grad[h] += dz1 * x1;
        res.grad[H + h] += dz1 * x2;
        res.grad[2 * H + h] += dz1;
      }
    }
  }
  return res;
}

std::pair<int, int> Raster::cell_of(double x, double y) const {
  const int ix = std::clamp(static_cast<int>((x - x0) / (x1 - x0) * width), 0, width - 1);
  const int iy = std::clamp(static_cast<int>((y - y0) / (y1 - y0) * height), 0, height - 1);
  return {ix, iy};
}

std::pair<double, double> Raster::cell_center(int ix, int iy) const {
  return {x0 + (ix + 0.5) * (x1 - x0) / width, y0 + (iy + 0.5) * (y1 - y0) / height};
}

namespace {

Raster rasterize(const MlpModel& model, const AngleDataset& data,
                 const BoundaryTrainConfig& cfg) {
  double x0 = data.points[0][0], x1 = x0, y0 = data.points[0][1], y1 = y0;
  for (const auto& p : data.points) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double mx = cfg.raster_margin * (x1 - x0);
  const double my = cfg.raster_margin * (y1 - y0);

  Raster r;
  r.width = r.height = cfg.raster_resolution;
  r.x0 = x0 - mx;
  r.x1 = x1 + mx;
  r.y0 = y0 - my;
  r.y1 = y1 + my;
  r.cls.resize(static_cast<std::size_t>(r.width) * r.height);
  for (int iy = 0; iy < r.height; ++iy) {
    for (int ix = 0; ix < r.width; ++ix) {
      const auto [cx, cy] = r.cell_center(ix, iy);
      r.cls[static_cast<std::size_t>(iy) * r.width + ix] =
          model.logit(cx, cy) > 0.0 ? 1 : 0;
    }
  }
  return r;
}

double train_accuracy(const MlpModel& model, const AngleDataset& data) {
  int correct = 0;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    const int pred = model.logit(data.points[i][0], data.points[i][1]) > 0.0 ? 1 : 0;
    if (pred == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.points.size());
}

}  // namespace

UpdateNorms effective_update_norms(const MlpModel& model, const OptimState& state,
                                   const AngleDataset& data,
                                   const BoundaryTrainConfig& cfg, double p) {
  const std::size_t n = data.points.size();
  UpdateNorms out;
  out.norms.resize(n);

  const double bc2 =
      (cfg.opt.bias_correction && state.t > 0) ? 1.0 - std::pow(cfg.opt.beta2, state.t) : 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, 2> pt[1] = {data.points[i]};
    const int lab[1] = {data.labels[i]};
    const auto bw = mlp_backward(model, pt, lab);
    double acc = 0.0;
    for (int j = 0; j < MlpModel::kParamCount; ++j) {
      double u = cfg.opt.eta * bw.grad[j];
      if (cfg.precondition_update_norms) {
        const double v_hat = state.v[static_cast<std::size_t>(j)] / bc2;
        u /= std::pow(v_hat + cfg.opt.eps_v, p) + cfg.opt.eps;
      }
      acc += u * u;
    }
    out.norms[i] = std::sqrt(acc);
  }

  // Top-30% per class, ties broken by ascending sample index.
  out.top_mask.assign(n, false);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (data.labels[i] == cls) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (out.norms[a] != out.norms[b]) return out.norms[a] > out.norms[b];
      return a < b;
    });
    const std::size_t take =
        static_cast<std::size_t>(std::ceil(0.3 * static_cast<double>(idx.size())));
    for (std::size_t i = 0; i < take && i < idx.size(); ++i) out.top_mask[idx[i]] = true;
  }
  return out;
}

int BoundaryRun::first_iter_at(double accuracy) const {
  for (const auto& [it, acc] : accuracy_curve)
    if (acc >= accuracy) return it;
  return -1;
}

BoundaryRun train_boundary(const AngleDataset& data, const PSchedule& schedule,
                           const BoundaryTrainConfig& cfg) {
  if (data.points.empty()) throw std::invalid_argument("train_boundary: empty dataset");
  if (cfg.checkpoints.empty())
    throw std::invalid_argument("train_boundary: need at least one checkpoint");
  cfg.opt.validate();
  schedule.validate();

  BoundaryRun run;
  MlpModel model = MlpModel::init(cfg.init_seed);
  OptimState state(MlpModel::kParamCount);
  const double grad_scale =
      cfg.sum_reduction ? static_cast<double>(data.points.size()) : 1.0;

  for (int it = 1; it <= cfg.iterations; ++it) {
    run.accuracy_curve.emplace_back(it, train_accuracy(model, data));

    const double p = schedule.p_at(static_cast<double>(it - 1));
    auto bw = mlp_backward(model, data.points, data.labels);
    if (!std::isfinite(bw.loss))
      throw std::runtime_error("train_boundary: non-finite loss at iteration " +
                               std::to_string(it));
    for (double& g : bw.grad) g *= grad_scale;
    step(state, model.theta, bw.grad, cfg.opt, p);

    if (std::find(cfg.checkpoints.begin(), cfg.checkpoints.end(), it) !=
        cfg.checkpoints.end()) {
      CheckpointRecord rec;
      rec.iteration = it;
      rec.raster = rasterize(model, data, cfg);
      rec.update_norms = effective_update_norms(model, state, data, cfg, p);
      run.checkpoints.push_back(std::move(rec));
    }
  }
  run.final_model = std::move(model);
  return run;
}

}  // namespace ptide
