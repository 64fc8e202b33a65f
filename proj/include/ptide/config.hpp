#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ptide/schedule.hpp"

namespace ptide {

using json = nlohmann::ordered_json;

// Config problems (malformed file, unknown key, bad value) map to exit
// code 2; experiment failures map to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully-resolved run configuration with every field defaulted, so a bare
// invocation reproduces the default experiment.
json default_run_config();

// Loads a JSON config file and merges it over the defaults. Unknown keys
// at any level abort with ConfigError (no silent ignore).
json load_config(const std::string& path);

// Merges src over dst, validating every key in src against dst's schema.
void merge_config(json& dst, const json& src, const std::string& prefix = "");

PSchedule schedule_from_json(const json& j);
json schedule_to_json(const PSchedule& s);

}  // namespace ptide
