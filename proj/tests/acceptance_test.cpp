// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Numeric targets are frozen here on purpose; do not relax
// them to make a run pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ptide/boundary.hpp"
#include "ptide/config.hpp"
#include "ptide/density.hpp"
#include "ptide/io.hpp"
#include "ptide/optim.hpp"
#include "ptide/rng.hpp"
#include "ptide/schedule.hpp"
#include "ptide/spectral.hpp"

using namespace ptide;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TableRow {
  std::string id;
  PSchedule schedule;
  std::vector<double> expected;  // C_k for k = 1,2,4,8,16,32
};

// Reference decay constants for the default spectral configuration.
std::vector<TableRow> reference_table() {
  return {
      {"p=-0.5", PSchedule::constant(-0.5), {0.312, 0.283, 0.366, 0.398, 0.352, 0.285}},
      {"p=-0.25", PSchedule::constant(-0.25), {0.389, 0.374, 0.391, 0.421, 0.421, 0.544}},
      {"p=0", PSchedule::constant(0.0), {0.400, 0.400, 0.400, 0.400, 0.400, 0.400}},
      {"p=0.25", PSchedule::constant(0.25), {0.369, 0.378, 0.393, 0.349, 0.336, 0.313}},
      {"p=0.5", PSchedule::constant(0.5), {0.358, 0.377, 0.417, 0.323, 0.295, 0.263}},
      {"tidal(0.5,-0.5)", PSchedule::cosine(0.0, 0.5, 6.0),
       {0.634, 0.619, 0.592, 0.672, 0.703, 0.762}},
      {"tidal(0.5,0)", PSchedule::cosine(0.25, 0.25, 6.0),
       {0.406, 0.413, 0.424, 0.387, 0.377, 0.356}},
      {"tidal(0,-0.5)", PSchedule::cosine(-0.25, 0.25, 6.0),
       {0.446, 0.426, 0.449, 0.502, 0.502, 0.707}},
  };
}

std::vector<double> fitted_ck(const PSchedule& schedule) {
  SpectralConfig cfg;  // library defaults match the reference table setup
  cfg.schedule = schedule;
  SpectralField field = init_field(cfg);
  const auto traj = evolve(field, cfg);
  const double p_eff = schedule.p_eff(6.0);
  std::vector<double> out;
  for (const auto& env : traj.envelopes) out.push_back(fit_decay(env, p_eff, 0.0, 6.0).c_k);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

static void criteria_1_to_4() {
  const auto table = reference_table();

  // Criterion 1: time the neutral p = 0 run on its own.
  const auto t0 = std::chrono::steady_clock::now();
  SpectralConfig cfg;
  cfg.schedule = PSchedule::constant(0.0);
  SpectralField field = init_field(cfg);
  const auto traj = evolve(field, cfg);
  bool c1 = true;
  double worst_ck = 0.400, worst_r2 = 1.0;
  for (const auto& env : traj.envelopes) {
    const auto fit = fit_decay(env, 0.0, 0.0, 6.0);
    if (std::abs(fit.c_k - 0.400) > std::abs(worst_ck - 0.400)) worst_ck = fit.c_k;
    worst_r2 = std::min(worst_r2, fit.r2);
    if (std::abs(fit.c_k - 0.400) > 0.005 || fit.r2 < 0.999) c1 = false;
  }
  const double elapsed1 = seconds_since(t0);
  if (elapsed1 >= 30.0) c1 = false;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "p=0 neutrality: worst C_k=%.4f (target 0.400 +/- 0.005), min R^2=%.6f, %.1fs",
                worst_ck, worst_r2, elapsed1);
  report(1, c1, buf);

  // Remaining seven configurations, one thread each.
  std::vector<std::vector<double>> fitted(table.size());
  fitted[2] = {};
  for (const auto& env : traj.envelopes)
    fitted[2].push_back(fit_decay(env, 0.0, 0.0, 6.0).c_k);
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == 2) continue;
    workers.emplace_back([&, i] { fitted[i] = fitted_ck(table[i].schedule); });
  }
  for (auto& w : workers) w.join();

  // Criterion 2: full table within +/- 0.03 absolute.
  bool c2 = true;
  double worst_dev = 0.0;
  std::string worst_cell = "-";
  const int ks[] = {1, 2, 4, 8, 16, 32};
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int j = 0; j < 6; ++j) {
      const double dev = std::abs(fitted[i][j] - table[i].expected[j]);
      if (dev > worst_dev) {
        worst_dev = dev;
        worst_cell = table[i].id + " k=" + std::to_string(ks[j]);
      }
      if (dev > 0.03) c2 = false;
    }
  }
  std::snprintf(buf, sizeof(buf), "C_k table: worst |dev|=%.4f at %s (tolerance 0.03)",
                worst_dev, worst_cell.c_str());
  report(2, c2, buf);

  // Criterion 3: exact sign-law orderings.
  const auto& p05 = fitted[4];
  const auto& pm25 = fitted[1];
  const auto& p0 = fitted[2];
  const auto& tidal = fitted[5];
  bool c3 = p05[5] < p05[3] && p05[5] < p05[0] && pm25[5] > pm25[0];
  for (int j = 0; j < 6; ++j)
    if (!(tidal[j] > p0[j])) c3 = false;
  std::snprintf(buf, sizeof(buf),
                "orderings: p=0.5 C_32=%.3f < C_8=%.3f, C_1=%.3f; p=-0.25 C_32=%.3f > "
                "C_1=%.3f; tidal > p=0 for all k",
                p05[5], p05[3], p05[0], pm25[5], pm25[0]);
  report(3, c3, buf);

  // Criterion 4: tidal (0, -0.5) accelerates k=32 over constant p=-0.25.
  const double margin = fitted[7][5] - pm25[5];
  std::snprintf(buf, sizeof(buf), "tidal high-k boost: C_32 %.3f vs %.3f (margin %.3f >= 0.1)",
                fitted[7][5], pm25[5], margin);
  report(4, margin >= 0.1, buf);
}

static void criterion_5() {
  const int modes[] = {1, 2, 4, 8, 16, 32};
  bool ok = true;
  double worst = 0.0;
  for (int k : modes) {
    for (int j : modes) {
      const double v = overlap_integral(k, j, 4096);
      const double dev = std::abs(v - (k == j ? 1.5 : 1.0));
      worst = std::max(worst, dev);
      if (dev > 1e-6) ok = false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "overlap integrals: worst |dev|=%.2e (tolerance 1e-6)",
                worst);
  report(5, ok, buf);
}

static void criterion_6() {
  const double ms[] = {-0.8, 0.0, 0.8};

  bool bitwise = true;
  DensityDemoConfig base;
  base.p = 0.5;
  for (double x : {0.3, 0.5, 0.9}) {
    for (double t : {50.0, 500.0, 3000.0}) {
      DensityDemoConfig a = base, b = base;
      a.slope_m = ms[0];
      const double ref = closed_form_error(x, t, a);
      for (double m : {ms[1], ms[2]}) {
        b.slope_m = m;
        if (closed_form_error(x, t, b) != ref) bitwise = false;
      }
    }
  }

  auto spread = [&](double p) {
    double lo = 1e300, hi = -1e300;
    for (double m : ms) {
      DensityDemoConfig cfg;
      cfg.slope_m = m;
      cfg.p = p;
      const double f = run_density_demo(cfg).frmse_final;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    return hi - lo;
  };
  const double s_half = spread(0.5);
  const double s_neg = spread(-0.5);
  const bool screened = s_neg >= 3.0 * s_half;

  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "screening: closed form bitwise m-independent=%s; fRMSE spread %.3e (p=-0.5) "
                "vs %.3e (p=0.5), ratio %.1f >= 3",
                bitwise ? "yes" : "no", s_neg, s_half, s_neg / std::max(s_half, 1e-300));
  report(6, bitwise && screened, buf);
}

static void criterion_7() {
  OptimConfig cfg{.eta = 0.01, .beta1 = 0.9, .beta2 = 0.999, .eps = 1e-8, .eps_v = 0.0};
  OptimState sa(1), sb(1);
  std::vector<double> ta{0.5}, tb{0.5};
  SplitMix64 rng(2024);
  double adam_dev = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const double g = rng.gaussian();
    step(sa, ta, std::vector<double>{g}, cfg, 0.5);
    step_adam_reference(sb, tb, std::vector<double>{g}, cfg);
    adam_dev = std::max(adam_dev, std::abs(ta[0] - tb[0]));
  }

  OptimState sc(1);
  std::vector<double> tc{0.5};
  double m = 0.0, ref = 0.5, sgd_dev = 0.0;
  SplitMix64 rng2(2025);
  for (int it = 1; it <= 1000; ++it) {
    const double g = rng2.gaussian();
    step(sc, tc, std::vector<double>{g}, cfg, 0.0);
    m = 0.9 * m + 0.1 * g;
    ref -= 0.01 * (m / (1.0 - std::pow(0.9, it))) / (1.0 + 1e-8);
    sgd_dev = std::max(sgd_dev, std::abs(tc[0] - ref));
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "optimizer identities: |p=0.5 - Adam| max %.2e (<= 1e-12), |p=0 - momentum "
                "SGD| max %.2e (<= 1e-15)",
                adam_dev, sgd_dev);
  report(7, adam_dev <= 1e-12 && sgd_dev <= 1e-15, buf);
}

static void criterion_8() {
  const double h = 1e-5;
  double worst = 0.0;
  int skipped = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = gen_angle_dataset(seed, 12);
    const MlpModel model = MlpModel::init(seed + 500);
    const auto base = mlp_backward(model, data.points, data.labels);

    // Mark parameters whose hidden unit sits within h of a ReLU kink for
    // some sample; finite differences straddle the kink there.
    constexpr int H = MlpModel::kHidden;
    std::vector<bool> near_kink(MlpModel::kParamCount, false);
    for (const auto& pt : data.points) {
      for (int u = 0; u < H; ++u) {
        const double z1 =
            pt[0] * model.theta[u] + pt[1] * model.theta[H + u] + model.theta[2 * H + u];
        const double slack = h * (std::abs(pt[0]) + std::abs(pt[1]) + 1.0) * 2.0;
        if (std::abs(z1) < slack)
          near_kink[u] = near_kink[H + u] = near_kink[2 * H + u] = true;
      }
    }

    for (int j = 0; j < MlpModel::kParamCount; ++j) {
      if (near_kink[j]) {
        ++skipped;
        continue;
      }
      MlpModel lo = model, hi = model;
      lo.theta[j] -= h;
      hi.theta[j] += h;
      const double fd = (mlp_backward(hi, data.points, data.labels).loss -
                         mlp_backward(lo, data.points, data.labels).loss) /
                        (2 * h);
      worst = std::max(worst, std::abs(fd - base.grad[j]) / std::max(1.0, std::abs(fd)));
    }
  }
  char buf[144];
  std::snprintf(buf, sizeof(buf),
                "gradient oracle: worst rel err %.2e over 10 seeds (< 1e-4), %d kink "
                "params excluded",
                worst, skipped);
  report(8, worst < 1e-4, buf);
}

static void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t master = 42;
  const int n_seeds = 5;

  std::map<double, std::vector<double>> t95;
  for (double p : {-0.05, 0.0}) t95[p] = std::vector<double>(n_seeds, 0.0);

  std::vector<std::thread> workers;
  for (int s = 0; s < n_seeds; ++s) {
    workers.emplace_back([&, s] {
      const auto data = gen_angle_dataset(derive_stream(master, 100 + s), 100);
      for (double p : {-0.05, 0.0}) {
        BoundaryTrainConfig cfg;
        cfg.init_seed = derive_stream(master, 200 + s);
        cfg.checkpoints = {cfg.iterations};
        cfg.raster_resolution = 20;  // keep checkpoint overhead negligible
        const auto run = train_boundary(data, PSchedule::constant(p), cfg);
        t95[p][s] = static_cast<double>(run.first_iter_at(0.95));
      }
    });
  }
  for (auto& w : workers) w.join();

  bool ok = true;
  for (double p : {-0.05, 0.0})
    for (double v : t95[p])
      if (v < 0) ok = false;  // never reached 95%
  const double med_neg = median(t95[-0.05]);
  const double med_zero = median(t95[0.0]);
  const double elapsed = seconds_since(t0);
  if (!(med_neg <= med_zero) || elapsed >= 60.0) ok = false;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "boundary alignment: median t95 p=-0.05 -> %.0f <= p=0 -> %.0f over %d "
                "seeds, %.1fs",
                med_neg, med_zero, n_seeds, elapsed);
  report(9, ok, buf);
}

static void criterion_10() {
#ifndef PTIDE_CLI_PATH
  report(10, false, "determinism: CLI path not configured");
#else
  const fs::path root = fs::temp_directory_path() / "ptide_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root);

  json base = default_run_config();
  base["spectral"]["preset"] = "single";
  base["spectral"]["n_grid"] = 256;
  base["spectral"]["n_steps"] = 300;
  base["spectral"]["schedule"] =
      schedule_to_json(PSchedule::cosine(0.0, 0.25, 6.0));
  base["density"]["n_grid"] = 33;
  base["density"]["n_steps"] = 100;
  base["density"]["checkpoints"] = {100};
  base["density"]["m_values"] = {0.0, 0.8};
  base["density"]["p_values"] = {0.5};
  base["boundary"]["n_seeds"] = 1;
  base["boundary"]["n_per_class"] = 20;
  base["boundary"]["iterations"] = 60;
  base["boundary"]["checkpoints"] = {30, 60};
  base["boundary"]["raster_resolution"] = 30;
  base["boundary"]["p_values"] = {0.0, 0.25};
  base["sweep"]["experiment"] = "density";
  base["sweep"]["grid"] = "p=0:0.5:0.5";
  const fs::path cfg_path = root / "config.json";
  {
    std::ofstream out(cfg_path);
    out << base.dump(2);
  }

  bool ok = true;
  std::string detail = "determinism: byte-identical reruns for";
  for (const std::string sub : {"spectral", "density", "boundary", "sweep"}) {
    const fs::path a = root / (sub + "_a"), b = root / (sub + "_b");
    for (const fs::path& dir : {a, b}) {
      const std::string cmd = std::string("\"") + PTIDE_CLI_PATH + "\" " + sub +
                              " --config " + cfg_path.string() + " --out " + dir.string() +
                              " --jobs 2 > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        detail += " [" + sub + ": run failed]";
      }
    }
    if (!ok) break;

    std::set<std::string> names_a, names_b;
    for (const auto& e : fs::directory_iterator(a))
      if (e.path().filename() != "manifest.json") names_a.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(b))
      if (e.path().filename() != "manifest.json") names_b.insert(e.path().filename().string());
    if (names_a != names_b || names_a.empty()) {
      ok = false;
      detail += " [" + sub + ": artifact lists differ]";
      continue;
    }
    for (const auto& name : names_a) {
      if (file_digest(a / name) != file_digest(b / name)) {
        ok = false;
        detail += " [" + sub + ": " + name + " differs]";
      }
    }
    if (ok) detail += " " + sub;
  }
  report(10, ok, detail);
#endif
}

int main() {
  criteria_1_to_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
