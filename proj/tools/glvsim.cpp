#include "glvsim/campaign.hpp"
#include "glvsim/config.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

using namespace glvsim;
namespace fs = std::filesystem;

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kNumeric = 3,
  kIo = 4,
  kInternal = 5,
};

constexpr const char *kOutputRootEnv = "GLVSIM_OUTPUT_ROOT";

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string profile;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("config", c.config_path,
                  "Config or manifest JSON (default: built-in defaults)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", c.overrides,
                  "Override a config value by dotted path, e.g. "
                  "wind.regime=nondirected_weak (repeatable)")
      ->take_all();
  cmd->add_option("--profile", c.profile, "Campaign sizes: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--seed", c.seed, "Master seed (overrides the config)");
}

/// Loads the document and applies profile, seed and overrides in that order.
Json load_document(const Common &c) {
  Json doc = default_config_document();
  if (!c.config_path.empty()) {
    doc = read_json_file(c.config_path);
    if (is_manifest(doc))
      doc = manifest_config(doc);
  }
  if (!c.profile.empty())
    apply_profile(doc, parse_profile(c.profile));
  if (c.seed)
    doc["seed"] = *c.seed;
  for (const auto &o : c.overrides)
    apply_override(doc, o);
  return doc;
}

fs::path output_dir(const std::string &flag, const ScenarioConfig &cfg) {
  if (!flag.empty())
    return flag;
  if (!cfg.output_dir.empty())
    return cfg.output_dir;
  if (const char *root = std::getenv(kOutputRootEnv); root && *root)
    return fs::path(root) / cfg.scenario;
  return fs::path("glvsim-output") / cfg.scenario;
}

int run_command(const Common &c, const std::string &scenario,
                const std::string &out, unsigned workers, bool dump) {
  Json doc = load_document(c);
  if (!scenario.empty())
    doc["scenario"] = scenario;
  const ScenarioConfig cfg = config_from_json(doc);
  RunOptions options;
  options.workers = workers;
  options.out_dir = output_dir(out, cfg);
  options.dump_trajectories = dump;
  options.profile = c.profile;
  const RunReport report = run_campaign(cfg, options);
  std::cout << report.summary;
  std::cout << "wrote " << report.data_files.size() << " data file(s) to "
            << options.out_dir.string() << " in " << report.wall_time_s
            << " s\n";
  return kOk;
}

int validate_command(const Common &c) {
  Json doc;
  try {
    doc = load_document(c);
  } catch (const ConfigError &e) {
    std::cout << "problems:\n  " << e.what() << "\n";
    return kConfig;
  }
  const auto problems = config_problems(doc);
  std::cout << "parameter provenance:\n";
  for (const auto &row : parameter_provenance(doc))
    std::cout << "  " << row.path << " = " << row.value << "  [" << row.tag
              << "]\n";
  if (problems.empty()) {
    std::cout << "config is valid\n";
    return kOk;
  }
  std::cout << "problems (" << problems.size() << "):\n";
  for (const auto &p : problems)
    std::cout << "  " << p << "\n";
  return kConfig;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Simulator for plant-to-plant green-leaf-volatile signalling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(glvsim::kVersion));

  Common run_opts;
  std::string scenario, out;
  unsigned workers = 1;
  bool dump = false;
  auto *run = app.add_subcommand("run", "Run a campaign and write its outputs");
  add_common(run, run_opts);
  run->add_option("--scenario", scenario, "Campaign to run")
      ->check(CLI::IsMember(glvsim::scenario_names()));
  run->add_option("--out", out,
                  std::string("Output directory (default: config output_dir, "
                              "then $") +
                      kOutputRootEnv + "/<scenario>, then "
                                       "./glvsim-output/<scenario>)");
  run->add_option("--workers", workers, "Worker threads")
      ->check(CLI::Range(1u, 1024u));
  run->add_flag("--dump-trajectories", dump,
                "Write per-cell trajectories (distance_sweep, alarm_map)");

  Common validate_opts;
  auto *validate =
      app.add_subcommand("validate", "Check a config and report provenance");
  add_common(validate, validate_opts);

  auto *list = app.add_subcommand("list-scenarios", "List campaign names");
  auto *defaults = app.add_subcommand(
      "default-config", "Print the built-in default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run)
      return run_command(run_opts, scenario, out, workers, dump);
    if (*validate)
      return validate_command(validate_opts);
    if (*list) {
      for (const auto &name : glvsim::scenario_names())
        std::cout << name << "\n";
      return kOk;
    }
    if (*defaults) {
      std::cout << glvsim::default_config_document().dump(2) << "\n";
      return kOk;
    }
  } catch (const glvsim::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const glvsim::GeometryError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const glvsim::NumericError &e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const glvsim::IoError &e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
