#include "ptide/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "ptide/boundary.hpp"
#include "ptide/density.hpp"
#include "ptide/fitops.hpp"
#include "ptide/io.hpp"
#include "ptide/optim.hpp"
#include "ptide/rng.hpp"
#include "ptide/spectral.hpp"
#include "ptide/svg.hpp"

namespace ptide {

namespace fs = std::filesystem;

namespace {

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

// Runs fn(0..n-1) on up to `jobs` worker threads; the first exception, if
// any, is rethrown on the caller's thread after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SpectralConfig spectral_config_from_json(const json& s) {
  SpectralConfig cfg;
  cfg.n_grid = s.at("n_grid").get<int>();
  cfg.dt = s.at("dt").get<double>();
  cfg.n_steps = s.at("n_steps").get<int>();
  cfg.eta = s.at("eta").get<double>();
  cfg.eps = s.at("eps").get<double>();
  cfg.modes = s.at("modes").get<std::vector<int>>();
  cfg.amps = s.at("amps").get<std::vector<double>>();
  cfg.record_stride = s.at("record_stride").get<int>();
  cfg.grad_factor = s.at("grad_factor").get<double>();
  cfg.accumulate_before_step = s.at("accumulate_before_step").get<bool>();
  cfg.schedule = schedule_from_json(s.at("schedule"));
  return cfg;
}

struct SpectralRunSpec {
  std::string id;
  PSchedule schedule;
};

std::vector<SpectralRunSpec> spectral_run_list(const json& s) {
  const std::string preset = s.at("preset").get<std::string>();
  std::vector<SpectralRunSpec> runs;
  if (preset == "table" || preset == "paper-table") {
    for (double p : {-0.5, -0.25, 0.0, 0.25, 0.5})
      runs.push_back({"const_" + tag(p), PSchedule::constant(p)});
    const double period = 6.0;
    runs.push_back({"tidal_0.5_-0.5", PSchedule::cosine(0.0, 0.5, period)});
    runs.push_back({"tidal_0.5_0", PSchedule::cosine(0.25, 0.25, period)});
    runs.push_back({"tidal_0_-0.5", PSchedule::cosine(-0.25, 0.25, period)});
  } else if (preset == "single") {
    runs.push_back({"single", schedule_from_json(s.at("schedule"))});
  } else {
    throw ConfigError("spectral: unknown preset '" + preset + "' (use 'table' or 'single')");
  }
  return runs;
}

struct SpectralRunResult {
  SpectralTrajectory traj;
  std::vector<DecayFit> fits;
  double p_eff = 0.0;
};

SpectralRunResult execute_spectral_run(SpectralConfig cfg, const PSchedule& schedule,
                                       double fit_lo, double fit_hi) {
  cfg.schedule = schedule;
  SpectralField field = init_field(cfg);
  SpectralRunResult res;
  res.traj = evolve(field, cfg);
  res.p_eff = schedule.p_eff(fit_hi);
  for (const auto& env : res.traj.envelopes)
    res.fits.push_back(fit_decay(env, res.p_eff, fit_lo, fit_hi));
  return res;
}

void write_envelope_csv(const fs::path& path, const SpectralTrajectory& traj) {
  CsvWriter csv(path);
  std::vector<std::string> header{"t"};
  for (const auto& env : traj.envelopes) header.push_back("E_" + std::to_string(env.k));
  header.push_back("G_mean");
  csv.row(header);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<std::string> row{fmt_double(traj.times[i])};
    for (const auto& env : traj.envelopes) row.push_back(fmt_double(env.values[i]));
    row.push_back(fmt_double(traj.mean_energy[i]));
    csv.row(row);
  }
  csv.close();
}

void write_envelope_svg(const fs::path& path, const std::string& id,
                        const SpectralTrajectory& traj) {
  double vmax = 1e-300;
  for (const auto& env : traj.envelopes)
    for (double v : env.values) vmax = std::max(vmax, v);
  SvgPlot plot(560, 380, 0.0, traj.times.back(), 1e-10, std::max(vmax, 1e-9), true);
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t m = 0; m < traj.envelopes.size(); ++m) {
    const auto& env = traj.envelopes[m];
    plot.polyline(env.times, env.values, kPalette[m % 8]);
    legend.emplace_back("k=" + std::to_string(env.k), kPalette[m % 8]);
  }
  plot.axes("t", "|E_k|");
  plot.title("mode envelopes, " + id);
  plot.legend(legend);
  plot.save(path);
}

struct GridSpec {
  std::string param;
  std::vector<double> values;
};

GridSpec parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("sweep: grid must look like name=lo:hi:step, got '" + text + "'");
  GridSpec spec;
  spec.param = text.substr(0, eq);
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(text.c_str() + eq + 1, "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      !(step > 0.0) || hi < lo)
    throw ConfigError("sweep: bad grid range in '" + text + "'");
  for (double v = lo; v <= hi + 1e-9 * step; v += step) spec.values.push_back(v);
  return spec;
}

}  // namespace

ArtifactList run_spectral_experiment(const json& cfg, const fs::path& out_dir) {
  const json& s = cfg.at("spectral");
  const SpectralConfig base = spectral_config_from_json(s);
  const double fit_lo = s.at("fit_window")[0].get<double>();
  const double fit_hi = s.at("fit_window")[1].get<double>();
  const auto runs = spectral_run_list(s);
  const bool emit_svg = cfg.at("emit_svg").get<bool>();

  std::vector<SpectralRunResult> results(runs.size());
  parallel_for(runs.size(), cfg.at("jobs").get<int>(), [&](std::size_t i) {
    results[i] = execute_spectral_run(base, runs[i].schedule, fit_lo, fit_hi);
  });

  ArtifactList artifacts;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path rel = "spectral_" + runs[i].id + "_envelopes.csv";
    write_envelope_csv(out_dir / rel, results[i].traj);
    artifacts.push_back(rel);
    if (emit_svg) {
      const fs::path svg_rel = "spectral_" + runs[i].id + "_envelopes.svg";
      write_envelope_svg(out_dir / svg_rel, runs[i].id, results[i].traj);
      artifacts.push_back(svg_rel);
    }
  }

  {
    const fs::path rel = "spectral_summary.csv";
    CsvWriter csv(out_dir / rel);
    csv.row({"config_id", "k", "c_k", "r2", "p_eff"});
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (const auto& fit : results[i].fits)
        csv.row({runs[i].id, std::to_string(fit.k), fmt_double(fit.c_k), fmt_double(fit.r2),
                 fmt_double(results[i].p_eff)});
    csv.close();
    artifacts.push_back(rel);
  }

  if (emit_svg) {
    // C_k vs k overlay, log2 frequency axis.
    double cmax = 0.0;
    for (const auto& r : results)
      for (const auto& f : r.fits) cmax = std::max(cmax, f.c_k);
    SvgPlot plot(560, 380, 0.0, std::log2(static_cast<double>(base.modes.back())), 0.0,
                 cmax * 1.1, false);
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      std::vector<double> xs, ys;
      for (const auto& f : results[i].fits) {
        xs.push_back(std::log2(static_cast<double>(f.k)));
        ys.push_back(f.c_k);
      }
      plot.polyline(xs, ys, kPalette[i % 8]);
      legend.emplace_back(runs[i].id, kPalette[i % 8]);
    }
    plot.axes("log2 k", "C_k");
    plot.title("early-time decay constants");
    plot.legend(legend);
    const fs::path rel = "spectral_ck_overlay.svg";
    plot.save(out_dir / rel);
    artifacts.push_back(rel);
  }
  return artifacts;
}

namespace {

DensityDemoConfig density_config_from_json(const json& d, double m, double p) {
  DensityDemoConfig cfg;
  cfg.slope_m = m;
  cfg.p = p;
  cfg.eta = d.at("eta").get<double>();
  cfg.eps = d.at("eps").get<double>();
  cfg.n_grid = d.at("n_grid").get<int>();
  cfg.n_steps = d.at("n_steps").get<int>();
  cfg.checkpoints = d.at("checkpoints").get<std::vector<int>>();
  cfg.eval_lo = d.at("eval_band")[0].get<double>();
  cfg.eval_hi = d.at("eval_band")[1].get<double>();
  return cfg;
}

}  // namespace

ArtifactList run_density_experiment(const json& cfg, const fs::path& out_dir) {
  const json& d = cfg.at("density");
  const auto m_values = d.at("m_values").get<std::vector<double>>();
  const auto p_values = d.at("p_values").get<std::vector<double>>();

  struct Cell {
    double m, p;
    DensityRunResult result;
  };
  std::vector<Cell> cells;
  for (double m : m_values)
    for (double p : p_values) cells.push_back({m, p, {}});

  parallel_for(cells.size(), cfg.at("jobs").get<int>(), [&](std::size_t i) {
    cells[i].result = run_density_demo(density_config_from_json(d, cells[i].m, cells[i].p));
  });

  ArtifactList artifacts;
  for (const auto& cell : cells) {
    const fs::path rel = "density_m" + tag(cell.m) + "_p" + tag(cell.p) + ".csv";
    CsvWriter csv(out_dir / rel);
    std::vector<std::string> header{"x"};
    for (const auto& [cp, w] : cell.result.w_snapshots)
      header.push_back("w_" + std::to_string(cp));
    csv.row(header);
    for (std::size_t i = 0; i < cell.result.x.size(); ++i) {
      std::vector<std::string> row{fmt_double(cell.result.x[i])};
      for (const auto& [cp, w] : cell.result.w_snapshots) row.push_back(fmt_double(w[i]));
      csv.row(row);
    }
    csv.close();
    artifacts.push_back(rel);
    std::cout << "density m=" << tag(cell.m) << " p=" << tag(cell.p)
              << " fRMSE=" << fmt_double(cell.result.frmse_final) << "\n";
  }

  {
    const fs::path rel = "density_summary.csv";
    CsvWriter csv(out_dir / rel);
    csv.row({"m", "p", "frmse_final"});
    for (const auto& cell : cells)
      csv.row({fmt_double(cell.m), fmt_double(cell.p), fmt_double(cell.result.frmse_final)});
    csv.close();
    artifacts.push_back(rel);
  }

  if (cfg.at("emit_svg").get<bool>()) {
    // Mosaic: rows = m, columns = p; dashed target, solid snapshots.
    const int pw = 280, ph = 220;
    std::ostringstream doc;
    const int total_w = pw * static_cast<int>(p_values.size());
    const int total_h = ph * static_cast<int>(m_values.size());
    doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\""
        << total_h << "\">\n";
    for (std::size_t r = 0; r < m_values.size(); ++r) {
      for (std::size_t c = 0; c < p_values.size(); ++c) {
        const auto& cell = cells[r * p_values.size() + c];
        SvgPlot panel(pw, ph, 0.0, 1.0, -0.05, 1.1, false);
        panel.polyline(cell.result.x, cell.result.x, "#555555", 1.0, true);
        std::size_t ci = 0;
        for (const auto& [cp, w] : cell.result.w_snapshots)
          panel.polyline(cell.result.x, w, kPalette[ci++ % 8]);
        panel.axes("x", "w(x)", 2);
        char label[96];
        std::snprintf(label, sizeof(label), "m=%g p=%g fRMSE=%.3g", cell.m, cell.p,
                      cell.result.frmse_final);
        panel.title(label);
        doc << panel.fragment(static_cast<double>(c * pw), static_cast<double>(r * ph));
      }
    }
    doc << "</svg>\n";
    const fs::path rel = "density_grid.svg";
    std::ofstream out(out_dir / rel, std::ios::binary);
    out << doc.str();
    if (!out) throw std::runtime_error("density: write failed for " + rel.string());
    artifacts.push_back(rel);
  }
  return artifacts;
}

namespace {

struct BoundaryRunSpec {
  std::string tag;     // "p<value>" or "sched"
  PSchedule schedule;
  int seed_index;
};

BoundaryTrainConfig boundary_train_config(const json& b) {
  BoundaryTrainConfig cfg;
  cfg.opt.eta = b.at("eta").get<double>();
  cfg.opt.beta1 = b.at("beta1").get<double>();
  cfg.opt.beta2 = b.at("beta2").get<double>();
  cfg.opt.eps = b.at("eps").get<double>();
  cfg.opt.eps_v = b.at("eps_v").get<double>();
  cfg.iterations = b.at("iterations").get<int>();
  cfg.checkpoints = b.at("checkpoints").get<std::vector<int>>();
  cfg.sum_reduction = b.at("sum_reduction").get<bool>();
  cfg.raster_resolution = b.at("raster_resolution").get<int>();
  return cfg;
}

AngleGeometry geometry_from_json(const json& g) {
  AngleGeometry geom;
  geom.angle_deg = g.at("angle_deg").get<double>();
  geom.far_radius = g.at("far_radius").get<double>();
  geom.near_radius = g.at("near_radius").get<double>();
  geom.far_fraction = g.at("far_fraction").get<double>();
  geom.vertex_gap = g.at("vertex_gap").get<double>();
  geom.jitter = g.at("jitter").get<double>();
  return geom;
}

}  // namespace

ArtifactList run_boundary_experiment(const json& cfg, const fs::path& out_dir) {
  const json& b = cfg.at("boundary");
  const auto p_values = b.at("p_values").get<std::vector<double>>();
  const int n_seeds = b.at("n_seeds").get<int>();
  const int n_per_class = b.at("n_per_class").get<int>();
  const std::uint64_t master_seed = cfg.at("seed").get<std::uint64_t>();
  const AngleGeometry geom = geometry_from_json(b.at("geometry"));
  const BoundaryTrainConfig base_cfg = boundary_train_config(b);
  const bool emit_svg = cfg.at("emit_svg").get<bool>();

  std::vector<std::pair<std::string, PSchedule>> policies;
  for (double p : p_values) policies.emplace_back("p" + tag(p), PSchedule::constant(p));
  if (!b.at("schedule").is_null())
    policies.emplace_back("sched", schedule_from_json(b.at("schedule")));

  std::vector<BoundaryRunSpec> specs;
  for (const auto& [name, sched] : policies)
    for (int s = 0; s < n_seeds; ++s) specs.push_back({name, sched, s});

  // Data and init seeds are shared across p values within a seed index.
  std::vector<BoundaryRun> runs(specs.size());
  parallel_for(specs.size(), cfg.at("jobs").get<int>(), [&](std::size_t i) {
    const auto& spec = specs[i];
    const auto data = gen_angle_dataset(
        derive_stream(master_seed, 100 + static_cast<std::uint64_t>(spec.seed_index)),
        n_per_class, geom);
    BoundaryTrainConfig run_cfg = base_cfg;
    run_cfg.init_seed =
        derive_stream(master_seed, 200 + static_cast<std::uint64_t>(spec.seed_index));
    runs[i] = train_boundary(data, spec.schedule, run_cfg);
  });

  ArtifactList artifacts;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const std::string stem = "boundary_" + spec.tag + "_s" + std::to_string(spec.seed_index);
    {
      const fs::path rel = stem + "_accuracy.csv";
      CsvWriter csv(out_dir / rel);
      csv.row({"iteration", "accuracy"});
      for (const auto& [it, acc] : runs[i].accuracy_curve)
        csv.row({std::to_string(it), fmt_double(acc)});
      csv.close();
      artifacts.push_back(rel);
    }
    if (spec.seed_index == 0) {
      const auto data = gen_angle_dataset(derive_stream(master_seed, 100), n_per_class, geom);
      const fs::path norms_rel = stem + "_norms.csv";
      CsvWriter norms(out_dir / norms_rel);
      norms.row({"checkpoint", "sample", "x1", "x2", "label", "norm", "top30"});
      for (const auto& rec : runs[i].checkpoints) {
        const fs::path pgm_rel = stem + "_cp" + std::to_string(rec.iteration) + ".pgm";
        write_pgm(out_dir / pgm_rel, rec.raster.width, rec.raster.height, rec.raster.cls);
        artifacts.push_back(pgm_rel);
        for (std::size_t s = 0; s < rec.update_norms.norms.size(); ++s)
          norms.row({std::to_string(rec.iteration), std::to_string(s),
                     fmt_double(data.points[s][0]), fmt_double(data.points[s][1]),
                     std::to_string(data.labels[s]), fmt_double(rec.update_norms.norms[s]),
                     rec.update_norms.top_mask[s] ? "1" : "0"});
      }
      norms.close();
      artifacts.push_back(norms_rel);
    }
  }

  {
    const fs::path rel = "boundary_summary.csv";
    CsvWriter csv(out_dir / rel);
    csv.row({"policy", "seed", "first_iter_95", "final_accuracy"});
    for (std::size_t i = 0; i < specs.size(); ++i)
      csv.row({specs[i].tag, std::to_string(specs[i].seed_index),
               std::to_string(runs[i].first_iter_at(0.95)),
               fmt_double(runs[i].accuracy_curve.back().second)});
    csv.close();
    artifacts.push_back(rel);
  }

  if (emit_svg) {
    // Mosaic for seed 0: rows = policies, columns = checkpoints. The
    // decision boundary is drawn as the set of raster cells where the
    // predicted class changes; top-30% samples get a black outline.
    const auto data = gen_angle_dataset(derive_stream(master_seed, 100), n_per_class, geom);
    const int pw = 200, ph = 200;
    const std::size_t n_cols = base_cfg.checkpoints.size();
    std::ostringstream doc;
    doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pw * n_cols
        << "\" height=\"" << ph * policies.size() << "\">\n";
    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
      const BoundaryRun* run = nullptr;
      for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].tag == policies[pi].first && specs[i].seed_index == 0) run = &runs[i];
      if (run == nullptr) continue;
      for (std::size_t ci = 0; ci < run->checkpoints.size() && ci < n_cols; ++ci) {
        const auto& rec = run->checkpoints[ci];
        const auto& ra = rec.raster;
        SvgPlot panel(pw, ph, ra.x0, ra.x1, ra.y0, ra.y1, false);
        for (int iy = 0; iy < ra.height; ++iy)
          for (int ix = 0; ix + 1 < ra.width; ++ix)
            if (ra.class_at(ix, iy) != ra.class_at(ix + 1, iy)) {
              const auto [cx, cy] = ra.cell_center(ix, iy);
              panel.circle(cx, cy, 0.7, "#444444");
            }
        for (std::size_t s = 0; s < data.points.size(); ++s)
          panel.circle(data.points[s][0], data.points[s][1], 1.6,
                       data.labels[s] ? "#d62728" : "#1f77b4",
                       rec.update_norms.top_mask[s] ? "black" : "none");
        panel.title(policies[pi].first + " it=" + std::to_string(rec.iteration));
        doc << panel.fragment(static_cast<double>(ci * pw), static_cast<double>(pi * ph));
      }
    }
    doc << "</svg>\n";
    const fs::path rel = "boundary_mosaic.svg";
    std::ofstream out(out_dir / rel, std::ios::binary);
    out << doc.str();
    if (!out) throw std::runtime_error("boundary: write failed for " + rel.string());
    artifacts.push_back(rel);
  }
  return artifacts;
}

ArtifactList run_sweep_experiment(const json& cfg, const fs::path& out_dir) {
  const json& sw = cfg.at("sweep");
  const std::string experiment = sw.at("experiment").get<std::string>();
  const GridSpec grid = parse_grid(sw.at("grid").get<std::string>());

  ArtifactList artifacts;
  const fs::path rel = "sweep_summary.csv";
  CsvWriter csv(out_dir / rel);

  if (experiment == "spectral") {
    if (grid.param != "p")
      throw ConfigError("sweep: spectral sweeps support only the 'p' parameter");
    const json& s = cfg.at("spectral");
    const SpectralConfig base = spectral_config_from_json(s);
    const double fit_lo = s.at("fit_window")[0].get<double>();
    const double fit_hi = s.at("fit_window")[1].get<double>();

    std::vector<SpectralRunResult> results(grid.values.size());
    parallel_for(grid.values.size(), cfg.at("jobs").get<int>(), [&](std::size_t i) {
      results[i] =
          execute_spectral_run(base, PSchedule::constant(grid.values[i]), fit_lo, fit_hi);
    });

    std::vector<std::string> header{"p"};
    for (int k : base.modes) header.push_back("c_" + std::to_string(k));
    csv.row(header);
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      std::vector<std::string> row{fmt_double(grid.values[i])};
      for (const auto& fit : results[i].fits) row.push_back(fmt_double(fit.c_k));
      csv.row(row);
    }
  } else if (experiment == "density") {
    if (grid.param != "p" && grid.param != "m")
      throw ConfigError("sweep: density sweeps support the 'p' or 'm' parameter");
    const json& d = cfg.at("density");
    const double fixed_m = d.at("m_values")[0].get<double>();
    const double fixed_p = d.at("p_values")[0].get<double>();

    std::vector<double> frmses(grid.values.size());
    parallel_for(grid.values.size(), cfg.at("jobs").get<int>(), [&](std::size_t i) {
      const double m = grid.param == "m" ? grid.values[i] : fixed_m;
      const double p = grid.param == "p" ? grid.values[i] : fixed_p;
      frmses[i] = run_density_demo(density_config_from_json(d, m, p)).frmse_final;
    });

    csv.row({grid.param, "frmse_final"});
    for (std::size_t i = 0; i < grid.values.size(); ++i)
      csv.row({fmt_double(grid.values[i]), fmt_double(frmses[i])});
  } else {
    throw ConfigError("sweep: unknown experiment '" + experiment + "'");
  }
  csv.close();
  artifacts.push_back(rel);
  return artifacts;
}

void write_manifest(const json& cfg, const fs::path& out_dir, const ArtifactList& artifacts,
                    double wall_clock_sec) {
  json manifest;
  manifest["library"] = "ptide";
  manifest["version"] = "0.1.0";
  manifest["wall_clock_sec"] = wall_clock_sec;
  manifest["config"] = cfg;
  json files = json::array();
  for (const auto& rel : artifacts) {
    const fs::path full = out_dir / rel;
    json f;
    f["path"] = rel.generic_string();
    f["bytes"] = static_cast<std::uint64_t>(fs::file_size(full));
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(file_digest(full)));
    f["fnv1a64"] = hex;
    files.push_back(f);
  }
  manifest["artifacts"] = files;
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
  if (!out) throw std::runtime_error("manifest: write failed");
}

}  // namespace ptide
