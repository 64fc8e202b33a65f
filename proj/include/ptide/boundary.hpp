#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ptide/optim.hpp"
#include "ptide/schedule.hpp"

namespace ptide {

// Two intersecting V-shaped class manifolds with a 75/25 far/near branch
// split per class. Class 0 opens upward from the origin, class 1 is the
// same V rotated 180 degrees with its vertex at (0, vertex_gap), so the
// long arms cross.
struct AngleGeometry {
  double angle_deg = 40.0;   // arm angle from vertical
  double far_radius = 2.0;
  double near_radius = 0.7;
  double far_fraction = 0.75;
  double vertex_gap = 1.2;
  double jitter = 0.05;      // isotropic gaussian jitter
};

enum class Branch { far_arm, near_arm };

struct AngleDataset {
  std::vector<std::array<double, 2>> points;
  std::vector<int> labels;  // 0 or 1
  std::vector<Branch> branch;
  std::uint64_t seed = 0;
};

AngleDataset gen_angle_dataset(std::uint64_t seed, int n_per_class,
                               const AngleGeometry& geom = {});

// 2-20-1 ReLU MLP with a single logit output; 81 parameters packed as
// W1 (2x20, input-major), b1 (20), W2 (20), b2 (1).
struct MlpModel {
  static constexpr int kHidden = 20;
  static constexpr int kParamCount = 2 * kHidden + kHidden + kHidden + 1;

  std::vector<double> theta;

  static MlpModel init(std::uint64_t seed, double weight_scale = 0.5);
  double logit(double x1, double x2) const;
};

std::vector<double> mlp_forward(const MlpModel& model,
                                std::span<const std::array<double, 2>> batch);

struct BackwardResult {
  double loss = 0.0;            // mean BCE-with-logits
  std::vector<double> grad;     // d(loss)/d(theta), 81 entries
};

BackwardResult mlp_backward(const MlpModel& model,
                            std::span<const std::array<double, 2>> batch,
                            std::span<const int> labels);

struct BoundaryTrainConfig {
  OptimConfig opt{.eta = 0.01, .beta1 = 0.9, .beta2 = 0.999,
                  .eps = 1e-8, .eps_v = 1e-8, .bias_correction = true};
  int iterations = 1000;
  std::vector<int> checkpoints{5, 20, 50, 100, 200, 500, 1000};
  // Scale the mean-BCE gradient by the batch size (sum reduction). With
  // mean reduction the second moments sit so far below 1 that negative p
  // damps every coordinate and the p-ordering degenerates.
  bool sum_reduction = true;
  int raster_resolution = 200;
  double raster_margin = 0.10;
  // Per-sample norms through the shared preconditioner; false = plain
  // per-sample gradient norms.
  bool precondition_update_norms = true;
  std::uint64_t init_seed = 0;
};

struct Raster {
  int width = 0, height = 0;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // covered window
  std::vector<std::uint8_t> cls;          // row-major, sampled at cell centers

  std::pair<int, int> cell_of(double x, double y) const;
  std::pair<double, double> cell_center(int ix, int iy) const;
  std::uint8_t class_at(int ix, int iy) const { return cls[static_cast<std::size_t>(iy) * width + ix]; }
};

struct UpdateNorms {
  std::vector<double> norms;
  std::vector<bool> top_mask;  // top-30% per class, ties broken by index
};

struct CheckpointRecord {
  int iteration = 0;
  Raster raster;
  UpdateNorms update_norms;
};

struct BoundaryRun {
  std::vector<std::pair<int, double>> accuracy_curve;  // (iteration, train acc)
  std::vector<CheckpointRecord> checkpoints;
  MlpModel final_model;
  int first_iter_at(double accuracy) const;  // -1 if never reached
};

// Full-batch training under the unified update with p from the schedule
// (queried with the 0-based iteration index). Throws std::runtime_error
// with the iteration index if the loss goes non-finite.
BoundaryRun train_boundary(const AngleDataset& data, const PSchedule& schedule,
                           const BoundaryTrainConfig& cfg);

// norm_i = || eta * g_i / ((v_hat + eps_v)^p + eps) ||_2 over all
// parameters, g_i the per-sample gradient and v_hat the optimizer's
// current bias-corrected second moment.
UpdateNorms effective_update_norms(const MlpModel& model, const OptimState& state,
                                   const AngleDataset& data,
                                   const BoundaryTrainConfig& cfg, double p);

}  // namespace ptide
