#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ptide/config.hpp"

namespace ptide {

// Relative paths of files a runner emitted under the output directory.
using ArtifactList = std::vector<std::filesystem::path>;

ArtifactList run_spectral_experiment(const json& cfg, const std::filesystem::path& out_dir);
ArtifactList run_density_experiment(const json& cfg, const std::filesystem::path& out_dir);
ArtifactList run_boundary_experiment(const json& cfg, const std::filesystem::path& out_dir);
ArtifactList run_sweep_experiment(const json& cfg, const std::filesystem::path& out_dir);

// Quick built-in invariant suite; prints one line per check to `log` and
// returns the number of failures.
int run_selftest(std::ostream& log);

// Resolved config echo + per-artifact digests, written after all runs.
void write_manifest(const json& cfg, const std::filesystem::path& out_dir,
                    const ArtifactList& artifacts, double wall_clock_sec);

// Full command-line front end; returns the process exit code
// (0 success, 1 experiment error, 2 config/usage error).
int run_cli(int argc, const char* const* argv);

}  // namespace ptide
