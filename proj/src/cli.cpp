#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptide/boundary.hpp"
#include "ptide/density.hpp"
#include "ptide/fitops.hpp"
#include "ptide/optim.hpp"
#include "ptide/rng.hpp"
#include "ptide/runners.hpp"
#include "ptide/spectral.hpp"

namespace ptide {

namespace fs = std::filesystem;

namespace {

struct Check {
  std::ostream& log;
  int failures = 0;
  void operator()(bool ok, const std::string& name) {
    log << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

int run_selftest(std::ostream& log) {
  Check check{log};

  {
    // Single-parameter step against hand arithmetic.
    OptimConfig cfg{.eta = 0.1, .beta1 = 0.9, .beta2 = 0.99, .eps = 1e-8, .eps_v = 0.0};
    OptimState state(1);
    std::vector<double> theta{1.0};
    const std::vector<double> grad{0.5};
    step(state, theta, grad, cfg, 0.25);
    const double m_hat = (0.1 * 0.5) / (1 - 0.9);
    const double v_hat = (0.01 * 0.25) / (1 - 0.99);
    const double expected = 1.0 - 0.1 * m_hat / (std::pow(v_hat, 0.25) + 1e-8);
    check(std::abs(theta[0] - expected) < 1e-14, "unified step matches hand arithmetic");
  }

  {
    // p = 0.5 with eps_v = 0 is textbook Adam.
    OptimConfig cfg{.eta = 0.01, .eps = 1e-8, .eps_v = 0.0};
    OptimState sa(4), sb(4);
    std::vector<double> ta{0.3, -0.7, 1.1, 0.0}, tb = ta;
    SplitMix64 rng(7);
    double max_dev = 0.0;
    for (int it = 0; it < 200; ++it) {
      std::vector<double> g(4);
      for (auto& v : g) v = rng.gaussian();
      step(sa, ta, g, cfg, 0.5);
      step_adam_reference(sb, tb, g, cfg);
      for (int i = 0; i < 4; ++i) max_dev = std::max(max_dev, std::abs(ta[i] - tb[i]));
    }
    check(max_dev <= 1e-12, "p = 0.5 reproduces the Adam reference");
  }

  {
    // p = 0 reduces to momentum SGD up to the 1/(1 + eps) factor.
    OptimConfig cfg{.eta = 0.05, .beta1 = 0.9, .beta2 = 0.999, .eps = 1e-8, .eps_v = 0.0};
    OptimState state(1);
    std::vector<double> theta{2.0};
    double m = 0.0;
    SplitMix64 rng(11);
    double max_dev = 0.0, ref = 2.0;
    for (int it = 1; it <= 100; ++it) {
      const double g = rng.gaussian();
      const std::vector<double> grad{g};
      std::vector<double> th{theta};
      step(state, theta, grad, cfg, 0.0);
      m = 0.9 * m + 0.1 * g;
      ref -= 0.05 * (m / (1 - std::pow(0.9, it))) / (1.0 + 1e-8);
      max_dev = std::max(max_dev, std::abs(theta[0] - ref));
      (void)th;
    }
    check(max_dev <= 1e-15, "p = 0 reduces to momentum SGD");
  }

  {
    const PSchedule s = PSchedule::cosine(0.0, 0.5, 6.0);
    SplitMix64 rng(3);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform(0.0, 50.0);
      if (std::abs(s.p_at(t + 6.0) - s.p_at(t)) > 1e-12) ok = false;
    }
    check(ok, "cosine schedule is periodic");
  }

  {
    const PSchedule s = PSchedule::alternating(0.25, -0.15, 200);
    const bool ok = std::abs(s.p_at(150.0) - 0.25) < 1e-15 &&
                    std::abs(s.p_at(250.0) + 0.15) < 1e-15 &&
                    std::abs(s.p_eff(400.0) - 0.05) < 1e-12;
    check(ok, "alternating schedule values and average");
  }

  {
    const bool ok = std::abs(overlap_integral(1, 1, 4096) - 1.5) < 1e-9 &&
                    std::abs(overlap_integral(1, 2, 4096) - 1.0) < 1e-9;
    check(ok, "sinusoid overlap integrals");
  }

  {
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> ys{1.0, 3.0, 5.0, 7.0};
    const LinFit fit = ols(xs, ys);
    check(std::abs(fit.slope - 2.0) < 1e-14 && std::abs(fit.intercept - 1.0) < 1e-14 &&
              std::abs(fit.r2 - 1.0) < 1e-14,
          "least squares recovers an exact line");
  }

  {
    DensityDemoConfig a, b;
    a.p = b.p = 0.5;
    a.slope_m = -0.8;
    b.slope_m = 0.8;
    bool ok = true;
    for (double x : {0.3, 0.5, 0.9})
      for (double t : {50.0, 200.0})
        if (closed_form_error(x, t, a) != closed_form_error(x, t, b)) ok = false;
    check(ok, "p = 0.5 closed form is density-independent");
  }

  {
    const auto data = gen_angle_dataset(99, 8);
    MlpModel model = MlpModel::init(5);
    const auto base = mlp_backward(model, data.points, data.labels);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < MlpModel::kParamCount; i += 9) {
      MlpModel lo = model, hi = model;
      lo.theta[i] -= h;
      hi.theta[i] += h;
      const double fd = (mlp_backward(hi, data.points, data.labels).loss -
                         mlp_backward(lo, data.points, data.labels).loss) /
                        (2 * h);
      worst = std::max(worst, std::abs(fd - base.grad[i]) /
                                  std::max(1.0, std::abs(base.grad[i])));
    }
    check(worst < 1e-3, "network gradient matches finite differences");
  }

  {
    const auto a = gen_angle_dataset(1234, 16);
    const auto b = gen_angle_dataset(1234, 16);
    bool ok = a.points.size() == b.points.size();
    for (std::size_t i = 0; ok && i < a.points.size(); ++i)
      ok = a.points[i] == b.points[i] && a.labels[i] == b.labels[i];
    check(ok, "dataset generation is deterministic");
  }

  log << (check.failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
      << (10 - check.failures) << "/10)\n";
  return check.failures;
}

namespace {

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("output: cannot create directory " + dir.string());
  const fs::path probe = dir / ".ptide_write_probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out) throw ConfigError("output: directory not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"unified p-exponent optimizer experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool svg = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--svg", svg, "emit SVG plots");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string preset;
  double flag_p = 0.0;
  int n_grid = 0, n_steps = 0;
  double dt = 0.0, eta = 0.0;
  CLI::App* spectral = app.add_subcommand("spectral", "mode-decay field evolution");
  add_common(spectral);
  spectral->add_option("--preset", preset, "'table' (full grid) or 'single'");
  auto* spectral_p = spectral->add_option("--p", flag_p, "constant exponent (implies --preset single)");
  auto* opt_ngrid = spectral->add_option("--n-grid", n_grid, "grid resolution");
  auto* opt_nsteps = spectral->add_option("--n-steps", n_steps, "evolution steps");
  auto* opt_dt = spectral->add_option("--dt", dt, "time step");
  auto* opt_eta = spectral->add_option("--eta", eta, "learning rate");

  double density_m = 0.0, density_p = 0.0;
  CLI::App* density = app.add_subcommand("density", "1D density regression");
  add_common(density);
  auto* dm = density->add_option("--m", density_m, "density slope (single run)");
  auto* dp = density->add_option("--p", density_p, "exponent (single run)");

  CLI::App* boundary = app.add_subcommand("boundary", "2D decision-boundary training");
  add_common(boundary);
  int n_seeds = 0;
  auto* bs = boundary->add_option("--seeds", n_seeds, "seeds per policy")->check(CLI::PositiveNumber);

  std::string grid_text, sweep_experiment;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep);
  sweep->add_option("--grid", grid_text, "range, e.g. p=-0.5:0.5:0.25");
  sweep->add_option("--experiment", sweep_experiment, "'spectral' or 'density'");

  CLI::App* selftest = app.add_subcommand("selftest", "built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (selftest->parsed()) return run_selftest(std::cout) == 0 ? 0 : 1;

  try {
    json cfg = config_path.empty() ? default_run_config() : load_config(config_path);

    CLI::App* sub = app.get_subcommands().front();
    cfg["experiment"] = sub->get_name();
    if (sub->count("--seed")) cfg["seed"] = seed;
    if (sub->count("--out")) cfg["output_dir"] = out_dir;
    if (sub->count("--jobs")) cfg["jobs"] = jobs;
    if (svg) cfg["emit_svg"] = true;

    if (spectral->parsed()) {
      if (!preset.empty()) cfg["spectral"]["preset"] = preset;
      if (spectral_p->count()) {
        cfg["spectral"]["preset"] = "single";
        cfg["spectral"]["schedule"] = schedule_to_json(PSchedule::constant(flag_p));
      }
      if (opt_ngrid->count()) cfg["spectral"]["n_grid"] = n_grid;
      if (opt_nsteps->count()) cfg["spectral"]["n_steps"] = n_steps;
      if (opt_dt->count()) cfg["spectral"]["dt"] = dt;
      if (opt_eta->count()) cfg["spectral"]["eta"] = eta;
    }
    if (density->parsed()) {
      if (dm->count()) cfg["density"]["m_values"] = {density_m};
      if (dp->count()) cfg["density"]["p_values"] = {density_p};
    }
    if (boundary->parsed() && bs->count()) cfg["boundary"]["n_seeds"] = n_seeds;
    if (sweep->parsed()) {
      if (!grid_text.empty()) cfg["sweep"]["grid"] = grid_text;
      if (!sweep_experiment.empty()) cfg["sweep"]["experiment"] = sweep_experiment;
    }

    const fs::path out(cfg.at("output_dir").get<std::string>());
    ensure_writable_dir(out);

    const auto t0 = std::chrono::steady_clock::now();
    ArtifactList artifacts;
    const std::string experiment = cfg.at("experiment").get<std::string>();
    if (experiment == "spectral")
      artifacts = run_spectral_experiment(cfg, out);
    else if (experiment == "density")
      artifacts = run_density_experiment(cfg, out);
    else if (experiment == "boundary")
      artifacts = run_boundary_experiment(cfg, out);
    else if (experiment == "sweep")
      artifacts = run_sweep_experiment(cfg, out);
    else
      throw ConfigError("unknown experiment '" + experiment + "'");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(cfg, out, artifacts, wall);
    std::cout << "wrote " << artifacts.size() << " artifact(s) + manifest.json to "
              << out.string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ptide
