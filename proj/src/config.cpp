#include "ptide/config.hpp"

#include <fstream>

namespace ptide {

json default_run_config() {
  json j;
  j["experiment"] = "spectral";
  j["seed"] = 42;
  j["output_dir"] = "ptide_out";
  j["emit_svg"] = false;
  j["jobs"] = 1;

  json spectral;
  spectral["preset"] = "table";  // "table" = 5 constant p + 3 tidal ranges
  spectral["n_grid"] = 4096;
  spectral["dt"] = 0.005;
  spectral["n_steps"] = 4000;
  spectral["eta"] = 0.2;
  spectral["eps"] = 1e-8;
  spectral["modes"] = {1, 2, 4, 8, 16, 32};
  spectral["amps"] = {1.0, 0.8, 0.6, 0.6, 0.5, 0.4};
  spectral["record_stride"] = 10;
  spectral["grad_factor"] = 2.0;
  spectral["accumulate_before_step"] = true;
  spectral["fit_window"] = {0.0, 6.0};
  spectral["schedule"] = schedule_to_json(PSchedule::constant(0.0));
  j["spectral"] = spectral;

  json density;
  density["m_values"] = {-0.8, 0.0, 0.8};
  density["p_values"] = {0.5, 0.0, -0.5};
  density["eta"] = 0.01;
  density["eps"] = 1e-8;
  density["n_grid"] = 257;
  density["n_steps"] = 3000;
  density["checkpoints"] = {200, 500, 1000, 2000, 3000};
  density["eval_band"] = {0.8, 1.0};
  j["density"] = density;

  json boundary;
  boundary["p_values"] = {-0.10, -0.05, 0.0, 0.25, 0.5};
  boundary["n_seeds"] = 5;
  boundary["n_per_class"] = 100;
  boundary["iterations"] = 1000;
  boundary["checkpoints"] = {5, 20, 50, 100, 200, 500, 1000};
  boundary["eta"] = 0.01;
  boundary["beta1"] = 0.9;
  boundary["beta2"] = 0.999;
  boundary["eps"] = 1e-8;
  boundary["eps_v"] = 1e-8;
  boundary["sum_reduction"] = true;
  boundary["raster_resolution"] = 200;
  json geom;
  geom["angle_deg"] = 40.0;
  geom["far_radius"] = 2.0;
  geom["near_radius"] = 0.7;
  geom["far_fraction"] = 0.75;
  geom["vertex_gap"] = 1.2;
  geom["jitter"] = 0.05;
  boundary["geometry"] = geom;
  boundary["schedule"] = nullptr;  // optional extra schedule run (e.g. pulse-tidal)
  j["boundary"] = boundary;

  json sweep;
  sweep["experiment"] = "spectral";
  sweep["grid"] = "p=-0.5:0.5:0.25";
  j["sweep"] = sweep;

  return j;
}

void merge_config(json& dst, const json& src, const std::string& prefix) {
  if (!src.is_object())
    throw ConfigError("config: expected an object at '" + (prefix.empty() ? "/" : prefix) + "'");
  for (const auto& [key, value] : src.items()) {
    const std::string path = prefix + "/" + key;
    if (!dst.contains(key)) throw ConfigError("config: unknown key '" + path + "'");
    json& slot = dst[key];
    if (value.is_object() && value.contains("kind")) {
      // Schedule objects are tagged unions; replace them wholesale so a
      // different kind is not merged against the default's keys.
      slot = value;
    } else if (slot.is_object() && value.is_object()) {
      merge_config(slot, value, path);
    } else if (slot.is_null() || value.is_null() || slot.type() == value.type() ||
               (slot.is_number() && value.is_number())) {
      slot = value;
    } else {
      throw ConfigError("config: type mismatch at '" + path + "' (expected " +
                        std::string(slot.type_name()) + ", got " +
                        std::string(value.type_name()) + ")");
    }
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json resolved = default_run_config();
  json file;
  try {
    file = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  if (!file.is_null()) merge_config(resolved, file);
  return resolved;
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError("schedule: unknown key '" + key + "' in " + where);
  }
}

}  // namespace

PSchedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("schedule: expected an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      check_keys(j, {"kind", "p"}, kind);
      return PSchedule::constant(j.value("p", 0.0));
    }
    if (kind == "cosine_tidal") {
      check_keys(j, {"kind", "p_mid", "p_amp", "period", "phase"}, kind);
      return PSchedule::cosine(j.value("p_mid", 0.0), j.value("p_amp", 0.0),
                               j.value("period", 1.0), j.value("phase", 0.0));
    }
    if (kind == "alternating") {
      check_keys(j, {"kind", "values", "interval"}, kind);
      const auto v = j.at("values").get<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("schedule: 'values' must hold exactly 2 numbers");
      return PSchedule::alternating(v[0], v[1], j.value("interval", 1L));
    }
    if (kind == "pulse_tidal") {
      check_keys(j, {"kind", "pulse_p", "pulse_len", "values", "interval"}, kind);
      const auto v = j.at("values").get<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("schedule: 'values' must hold exactly 2 numbers");
      return PSchedule::pulse_tidal(j.value("pulse_p", 0.0), j.value("pulse_len", 0L), v[0],
                                    v[1], j.value("interval", 1L));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  throw ConfigError("schedule: unknown kind '" + kind + "'");
}

json schedule_to_json(const PSchedule& s) {
  json j;
  switch (s.kind) {
    case ScheduleKind::constant:
      j["kind"] = "constant";
      j["p"] = s.p_const;
      break;
    case ScheduleKind::cosine_tidal:
      j["kind"] = "cosine_tidal";
      j["p_mid"] = s.p_mid;
      j["p_amp"] = s.p_amp;
      j["period"] = s.period;
      j["phase"] = s.phase;
      break;
    case ScheduleKind::alternating:
      j["kind"] = "alternating";
      j["values"] = {s.alt_values[0], s.alt_values[1]};
      j["interval"] = s.alt_interval;
      break;
    case ScheduleKind::pulse_tidal:
      j["kind"] = "pulse_tidal";
      j["pulse_p"] = s.pulse_p;
      j["pulse_len"] = s.pulse_len;
      j["values"] = {s.alt_values[0], s.alt_values[1]};
      j["interval"] = s.alt_interval;
      break;
  }
  return j;
}

}  // namespace ptide
