#include "glvsim/campaign.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace glvsim {

namespace fs = std::filesystem;

namespace {

class CsvWriter {
public:
  CsvWriter(const fs::path &path, const std::vector<std::string> &header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_)
      throw IoError("cannot open " + path.string() + " for writing");
    row(header);
  }
  ~CsvWriter() = default;

  void row(const std::vector<std::string> &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i)
        out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
    ++rows_;
  }

  /// Flushes and reports write failures.
  std::size_t close() {
    out_.close();
    if (!out_)
      throw IoError("failed writing " + path_.string());
    return rows_ - 1;
  }

private:
  fs::path path_;
  std::ofstream out_;
  std::size_t rows_ = 0;
};

std::string num(double v) { return format_number(v); }
std::string opt(const std::optional<double> &v) {
  return v ? format_number(*v) : std::string();
}
std::string flag(bool b) { return b ? "1" : "0"; }
std::string hours(const std::optional<double> &t) {
  if (!t)
    return "none";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f h", *t / 3600.0);
  return buf;
}

std::vector<std::string> state_fields(const ReceiverState &s) {
  return {num(s.c_a), num(s.c_t), num(s.c_o), num(s.c_g), num(s.c_v)};
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out)
    throw IoError("failed writing " + path.string());
}

struct Context {
  const ScenarioConfig &cfg;
  const RunOptions &options;
  RunReport &report;
  std::ostringstream summary;

  fs::path file(const std::string &name) {
    report.data_files.emplace_back(name);
    return options.out_dir / name;
  }
};

void write_trajectory(Context &ctx, const std::string &name,
                      const ReceiverTrajectory &t, std::size_t stride) {
  CsvWriter csv(ctx.file(name), {"t_s", "c_a_um", "c_t_um", "c_o_um",
                                 "c_g_um", "c_v_um"});
  for (std::size_t n = 0; n < t.states.size(); n += stride) {
    auto f = state_fields(t.states[n]);
    f.insert(f.begin(), num(t.time_of(n)));
    csv.row(f);
  }
  csv.close();
}

/// Clamp counts above 0.1% of steps suggest the step size is too coarse.
void warn_clamps(Context &ctx, const ReceiverTrajectory &t,
                 const std::string &what) {
  if (t.steps && t.clamp_events * 1000 > t.steps)
    ctx.summary << "warning: " << what << " clamped negative states "
                << t.clamp_events << " times in " << t.steps
                << " steps; reduce the step size\n";
}

void point_to_point(Context &ctx) {
  const auto &s = ctx.cfg.physics;
  const auto &c = ctx.cfg.campaigns.point_to_point;
  const auto r = run_point_to_point(s, c);
  CsvWriter csv(ctx.file("point_to_point.csv"),
                {"t_s", "air_HAL_mol_m3", "air_HOL_mol_m3", "air_HAC_mol_m3",
                 "input_HAL_mol_m3", "input_HOL_mol_m3", "input_HAC_mol_m3",
                 "c_a_um", "c_t_um", "c_o_um", "c_g_um", "c_v_um",
                 "linearity_ratio", "absorption_HAL_um_s",
                 "absorption_HOL_um_s", "absorption_HAC_um_s"});
  const auto &t = r.trajectory;
  for (std::size_t n = 0; n < t.states.size(); n += c.output_stride) {
    std::vector<std::string> f{num(t.time_of(n))};
    for (const auto *trace : {&r.air, &r.lossy_air})
      for (Molecule m : kAllMolecules)
        f.push_back(n < trace->size() ? num(trace->values[m][n]) : "");
    for (auto &x : state_fields(t.states[n]))
      f.push_back(x);
    f.push_back(num(linearity_ratio(t.states[n], s.enzymes)));
    for (Molecule m : kAllMolecules)
      f.push_back(num(t.absorption[m][n]));
    csv.row(f);
  }
  csv.close();
  const auto &o = r.outcome;
  ctx.summary << "receiver " << to_string(s.rx_position) << ", wind "
              << s.wind_regime << ", horizon " << c.horizon_s << " s\n"
              << "alarm time: " << hours(o.alarm_time) << "\n"
              << "linearity time: " << hours(o.linearity_time) << "\n"
              << "final c_v: " << num(o.final_state.c_v) << " uM\n"
              << "nonlinear fraction: " << num(o.nonlinear_fraction) << "\n"
              << "clamp events: " << o.clamp_events << "\n"
              << "max mass-balance residual: "
              << num(o.max_mass_balance_residual) << "\n";
  warn_clamps(ctx, t, "receiver");
}

void linearity_pilot(Context &ctx) {
  const auto rows = run_linearity_pilot(
      ctx.cfg.physics, ctx.cfg.campaigns.linearity_pilot, ctx.options.workers);
  CsvWriter csv(ctx.file("linearity_pilot.csv"),
                {"mode", "scaled_inputs", "scaling_factor", "duration_s",
                 "nonlinear_fraction", "linear"});
  std::size_t nonlinear = 0;
  for (const auto &r : rows) {
    csv.row({to_string(r.mode), r.inputs, num(r.scaling_factor),
             num(r.duration_s), num(r.nonlinear_fraction), flag(r.linear)});
    nonlinear += r.linear ? 0 : 1;
  }
  csv.close();
  ctx.summary << rows.size() << " pilot cells, " << nonlinear
              << " above the 0.02 nonlinear-fraction limit\n";
}

void frequency_response(Context &ctx) {
  const auto rows =
      run_frequency_response(ctx.cfg.physics,
                             ctx.cfg.campaigns.frequency_response,
                             ctx.options.workers);
  CsvWriter csv(ctx.file("frequency_response.csv"),
                {"molecule", "frequency_hz", "gain", "phase_rad", "offset_um",
                 "residual_ratio", "warning"});
  for (const auto &r : rows) {
    csv.row({std::string(molecule_name(r.molecule)), num(r.frequency_hz),
             num(r.gain), num(r.phase_rad), num(r.offset_um),
             num(r.residual_ratio), flag(r.warning)});
    if (r.warning)
      ctx.summary << "warning: " << molecule_name(r.molecule) << " at "
                  << num(r.frequency_hz)
                  << " Hz, fit residual above 20% of the amplitude\n";
  }
  csv.close();
  for (Molecule m : ctx.cfg.campaigns.frequency_response.molecules)
    for (const auto &r : rows)
      if (r.molecule == m) {
        ctx.summary << molecule_name(m) << " gain at " << num(r.frequency_hz)
                    << " Hz: " << num(r.gain) << "\n";
        break;
      }
}

void sensitivity_heatmap(Context &ctx) {
  const auto &c = ctx.cfg.campaigns.sensitivity_heatmap;
  const auto cells =
      run_sensitivity_heatmap(ctx.cfg.physics, c, ctx.options.workers);
  CsvWriter csv(ctx.file("sensitivity_heatmap.csv"),
                {"scale_85a", "scale_91r", "nonlinear_fraction", "linear"});
  for (const auto &cell : cells)
    csv.row({num(cell.scale_85a), num(cell.scale_91r),
             num(cell.nonlinear_fraction), flag(cell.linear)});
  csv.close();
  const auto flips =
      classification_flips(cells, c.scale_85a.size(), c.scale_91r.size());
  ctx.summary << "classification flips along the 85A axis: "
              << flips.along_85a << "\n"
              << "classification flips along the 91R axis: "
              << flips.along_91r << "\n";
}

void distance_sweep(Context &ctx) {
  const auto &c = ctx.cfg.campaigns.distance_sweep;
  const auto rows =
      run_distance_sweep(ctx.cfg.physics, c, ctx.options.workers);
  CsvWriter csv(ctx.file("distance_sweep.csv"),
                {"regime", "distance_m", "alarm_time_s", "linearity_time_s",
                 "final_c_v_um", "nonlinear_fraction"});
  for (const auto &r : rows) {
    csv.row({r.regime, num(r.distance_m), opt(r.outcome.alarm_time),
             opt(r.outcome.linearity_time), num(r.outcome.final_state.c_v),
             num(r.outcome.nonlinear_fraction)});
    ctx.summary << r.regime << " at " << num(r.distance_m)
                << " m: alarm " << hours(r.outcome.alarm_time)
                << ", linearity " << hours(r.outcome.linearity_time) << "\n";
  }
  csv.close();
  if (ctx.options.dump_trajectories) {
    const auto &s = ctx.cfg.physics;
    const auto signal = scenario_emission(s, c.horizon_s);
    ChannelConfig channel = s.channel;
    channel.horizon_s = c.horizon_s;
    std::vector<Vec3> positions;
    for (double d : c.distances_m)
      positions.push_back(channel.tx_position + Vec3{d, 0.0, 0.0});
    fs::create_directories(ctx.options.out_dir / "trajectories");
    for (const auto &regime : c.regimes) {
      std::vector<ReceiverTrajectory> traj;
      run_receivers(s, signal, scenario_wind(s, regime, c.horizon_s), channel,
                    positions, "distance/" + regime, ctx.options.workers,
                    &traj);
      for (std::size_t i = 0; i < traj.size(); ++i)
        write_trajectory(ctx,
                         "trajectories/distance_" + regime + "_" +
                             std::to_string(i) + ".csv",
                         traj[i], 10);
    }
  }
}

void alarm_map(Context &ctx) {
  const auto &c = ctx.cfg.campaigns.alarm_map;
  const auto r = run_alarm_map(ctx.cfg.physics, c, ctx.options.workers);
  CsvWriter cells(ctx.file("alarm_map_receivers.csv"),
                  {"index", "x_m", "y_m", "z_m", "alarm_time_s",
                   "linearity_time_s", "final_c_v_um"});
  for (std::size_t i = 0; i < r.positions.size(); ++i) {
    const auto &p = r.positions[i];
    const auto &o = r.outcomes[i];
    cells.row({std::to_string(i), num(p.x), num(p.y), num(p.z),
               opt(o.alarm_time), opt(o.linearity_time),
               num(o.final_state.c_v)});
  }
  cells.close();
  CsvWriter snaps(ctx.file("alarm_map_snapshots.csv"),
                  {"snapshot_time_s", "index", "alarmed"});
  for (std::size_t k = 0; k < r.snapshot_times_s.size(); ++k)
    for (std::size_t i = 0; i < r.positions.size(); ++i)
      snaps.row({num(r.snapshot_times_s[k]), std::to_string(i),
                 flag(r.alarmed[k][i])});
  snaps.close();
  ctx.summary << c.regime << ", " << c.nx << " x " << c.ny << " grid\n";
  for (std::size_t k = 0; k < r.snapshot_times_s.size(); ++k)
    ctx.summary << "alarmed by " << num(r.snapshot_times_s[k])
                << " s: " << r.alarmed_count(k) << " of "
                << r.positions.size() << "\n";
  if (ctx.options.dump_trajectories) {
    const auto &s = ctx.cfg.physics;
    ChannelConfig channel = s.channel;
    channel.horizon_s = c.duration_s;
    std::vector<ReceiverTrajectory> traj;
    run_receivers(s, scenario_emission(s, c.duration_s),
                  scenario_wind(s, c.regime, c.duration_s), channel,
                  r.positions, "alarm_map/" + c.regime, ctx.options.workers,
                  &traj);
    fs::create_directories(ctx.options.out_dir / "trajectories");
    for (std::size_t i = 0; i < traj.size(); ++i)
      write_trajectory(ctx,
                       "trajectories/alarm_map_" + std::to_string(i) + ".csv",
                       traj[i], 10);
  }
}

void single_glv(Context &ctx) {
  const auto &c = ctx.cfg.campaigns.single_glv_comparison;
  const auto r =
      run_single_glv_comparison(ctx.cfg.physics, c, ctx.options.workers);
  CsvWriter csv(ctx.file("single_glv_comparison.csv"),
                {"t_s", "c_v_HAL_only_um", "c_v_HOL_only_um",
                 "c_v_HAC_only_um"});
  const auto &t0 = r.runs.front().trajectory;
  for (std::size_t n = 0; n < t0.states.size(); n += c.output_stride) {
    std::vector<std::string> f{num(t0.time_of(n))};
    for (const auto &run : r.runs)
      f.push_back(num(run.trajectory.states[n].c_v));
    csv.row(f);
  }
  csv.close();
  CsvWriter totals(ctx.file("single_glv_summary.csv"),
                   {"active", "amplitude_HAL_mol_s", "amplitude_HOL_mol_s",
                    "amplitude_HAC_mol_s", "final_c_v_um", "alarm_time_s"});
  ctx.summary << "carbon budget: " << num(r.carbon_budget) << " mol C/s\n";
  for (const auto &run : r.runs) {
    totals.row({std::string(molecule_name(run.active)),
                num(run.amplitudes[Molecule::HAL]),
                num(run.amplitudes[Molecule::HOL]),
                num(run.amplitudes[Molecule::HAC]),
                num(run.outcome.final_state.c_v), opt(run.outcome.alarm_time)});
    ctx.summary << molecule_name(run.active)
                << "-only final c_v: " << num(run.outcome.final_state.c_v)
                << " uM, alarm " << hours(run.outcome.alarm_time) << "\n";
  }
  totals.close();
}

} // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

bool is_manifest(const Json &doc) {
  return doc.is_object() && doc.contains("tool") && doc["tool"] == "glvsim" &&
         doc.contains("config");
}

Json manifest_config(const Json &manifest) {
  if (!is_manifest(manifest))
    throw ConfigError("not a glvsim manifest");
  return manifest.at("config");
}

RunReport run_campaign(const ScenarioConfig &cfg, const RunOptions &options) {
  const auto start = std::chrono::steady_clock::now();
  cfg.physics.validate();
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory " +
                  options.out_dir.string() + ": " + ec.message());

  RunReport report;
  Context ctx{cfg, options, report, {}};
  ctx.summary << "scenario: " << cfg.scenario << "\nseed: "
              << cfg.physics.seed << "\n";
  if (cfg.scenario == "point_to_point")
    point_to_point(ctx);
  else if (cfg.scenario == "linearity_pilot")
    linearity_pilot(ctx);
  else if (cfg.scenario == "frequency_response")
    frequency_response(ctx);
  else if (cfg.scenario == "sensitivity_heatmap")
    sensitivity_heatmap(ctx);
  else if (cfg.scenario == "distance_sweep")
    distance_sweep(ctx);
  else if (cfg.scenario == "alarm_map")
    alarm_map(ctx);
  else if (cfg.scenario == "single_glv_comparison")
    single_glv(ctx);
  else
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");

  report.summary = ctx.summary.str();
  write_text(options.out_dir / "summary.txt", report.summary);
  report.wall_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  Json manifest;
  manifest["tool"] = "glvsim";
  manifest["version"] = kVersion;
  manifest["scenario"] = cfg.scenario;
  manifest["seed"] = cfg.physics.seed;
  if (!options.profile.empty())
    manifest["profile"] = options.profile;
  manifest["workers"] = options.workers;
  manifest["wall_time_s"] = report.wall_time_s;
  Json files = Json::array();
  for (const auto &f : report.data_files)
    files.push_back(f.generic_string());
  manifest["data_files"] = files;
  manifest["config"] = cfg.document;
  write_text(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return report;
}

} // namespace glvsim
