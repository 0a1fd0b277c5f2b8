#include "glvsim/campaign.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>

using namespace glvsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ScenarioConfig short_run(const std::string &scenario) {
  Json doc = default_config_document();
  doc["scenario"] = scenario;
  apply_override(doc, "campaigns.point_to_point.horizon_s=300");
  apply_override(doc, "campaigns.distance_sweep.horizon_s=300");
  apply_override(doc, "campaigns.distance_sweep.distances_m=[0.1,0.5]");
  return config_from_json(doc);
}

} // namespace

TEST_CASE("point to point run writes CSV and manifest") {
  TempDir dir("glvsim-test-p2p");
  RunOptions o;
  o.out_dir = dir.path / "a";
  const auto cfg = short_run("point_to_point");
  const auto rep = run_campaign(cfg, o);
  REQUIRE(rep.data_files.size() == 1);
  CHECK(rep.data_files[0] == "point_to_point.csv");
  const std::string csv = slurp(o.out_dir / "point_to_point.csv");
  CHECK(csv.rfind("t_s,air_HAL_mol_m3", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 301);
  CHECK(fs::exists(o.out_dir / "summary.txt"));

  const Json manifest = read_json_file(o.out_dir / "manifest.json");
  CHECK(is_manifest(manifest));
  CHECK(manifest["seed"] == 1);
  CHECK(manifest_config(manifest) == cfg.document);
  CHECK(manifest["data_files"][0] == "point_to_point.csv");

  // Rerunning from the manifest reproduces the data bytes.
  RunOptions again = o;
  again.out_dir = dir.path / "b";
  run_campaign(config_from_json(manifest_config(manifest)), again);
  CHECK(slurp(again.out_dir / "point_to_point.csv") == csv);
  CHECK(slurp(again.out_dir / "summary.txt") == slurp(o.out_dir / "summary.txt"));
}

TEST_CASE("overrides are echoed in the manifest") {
  TempDir dir("glvsim-test-echo");
  Json doc = short_run("point_to_point").document;
  apply_override(doc, "wind.regime=nondirected_weak");
  RunOptions o;
  o.out_dir = dir.path;
  run_campaign(config_from_json(doc), o);
  const Json m = read_json_file(dir.path / "manifest.json");
  CHECK(m["config"]["wind"]["regime"] == "nondirected_weak");
}

TEST_CASE("distance sweep is independent of the worker count") {
  TempDir dir("glvsim-test-workers");
  const auto cfg = short_run("distance_sweep");
  RunOptions a, b;
  a.out_dir = dir.path / "w1";
  b.out_dir = dir.path / "w3";
  b.workers = 3;
  a.dump_trajectories = b.dump_trajectories = true;
  const auto ra = run_campaign(cfg, a);
  run_campaign(cfg, b);
  CHECK(ra.data_files.size() > 1);
  for (const auto &f : ra.data_files)
    CHECK(slurp(a.out_dir / f) == slurp(b.out_dir / f));
}

TEST_CASE("number formatting keeps full precision") {
  CHECK(format_number(0.1) == "1.0000000000000001e-01");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("unwritable output directory is an io error") {
  RunOptions o;
  o.out_dir = "/proc/glvsim-not-writable";
  CHECK_THROWS(run_campaign(short_run("point_to_point"), o));
}
