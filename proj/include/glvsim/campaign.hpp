#pragma once

#include "glvsim/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace glvsim {

struct RunOptions {
  unsigned workers = 1;
  std::filesystem::path out_dir;
  /// Also write per-cell trajectories (distance sweep and alarm map).
  bool dump_trajectories = false;
  std::string profile; // echoed in the manifest when set
};

struct RunReport {
  std::vector<std::filesystem::path> data_files; // relative to out_dir
  std::string summary;
  double wall_time_s = 0.0;
};

/// Runs the configured campaign and writes its data CSVs, manifest.json and
/// summary.txt into `options.out_dir`, which is created if needed. Data
/// files depend only on the config and seed.
RunReport run_campaign(const ScenarioConfig &cfg, const RunOptions &options);

/// Full-precision scientific notation (17 significant digits).
std::string format_number(double value);

/// True when the document is a manifest written by run_campaign.
bool is_manifest(const Json &doc);
/// The config echoed in a manifest.
Json manifest_config(const Json &manifest);

} // namespace glvsim
