#include "glvsim/analyses.hpp"

#include "glvsim/parallel.hpp"
#include "glvsim/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace glvsim {

namespace {

std::size_t samples_for(double duration_s, double fs) {
  return static_cast<std::size_t>(std::llround(duration_s * fs));
}

void require(bool ok, const std::string &message) {
  if (!ok)
    throw ConfigError(message);
}

ChannelConfig campaign_channel(const Scenario &s, double horizon_s) {
  ChannelConfig c = s.channel;
  c.horizon_s = horizon_s;
  c.validate();
  return c;
}

ReceiverOptions receiver_options(const Scenario &s, bool store_states) {
  ReceiverOptions o = s.receiver;
  o.store_states = store_states;
  o.alarm_threshold_um = s.alarm_threshold_um;
  return o;
}

ReceiverOutcome outcome_of(const ReceiverTrajectory &t, const Vec3 &position) {
  ReceiverOutcome o;
  o.position = position;
  if (t.alarm_index)
    o.alarm_time = t.time_of(*t.alarm_index);
  if (t.nonlinear_index)
    o.linearity_time = t.time_of(*t.nonlinear_index);
  o.nonlinear_fraction =
      t.samples ? static_cast<double>(t.nonlinear_samples) /
                      static_cast<double>(t.samples)
                : 0.0;
  o.final_state = t.final_state;
  o.clamp_events = t.clamp_events;
  o.max_mass_balance_residual = t.max_mass_balance_residual;
  return o;
}

double prefix_fraction(const std::vector<ReceiverState> &states,
                       std::size_t last, const EnzymeSet &e) {
  std::size_t above = 0;
  for (std::size_t n = 0; n <= last; ++n)
    if (linearity_ratio(states[n], e) > kLinearityRatioLimit)
      ++above;
  return static_cast<double>(above) / static_cast<double>(last + 1);
}

} // namespace

void Scenario::validate() const {
  require(sample_rate_hz > 0.0 && std::isfinite(sample_rate_hz),
          "scenario: sample_rate_hz must be > 0");
  require(symbol_period_s > 0.0, "scenario: symbol_period_s must be > 0");
  for (Molecule m : kAllMolecules)
    require(amplitudes[m] >= 0.0 && std::isfinite(amplitudes[m]),
            "scenario: amplitude of " + std::string(molecule_name(m)) + " must be >= 0");
  require(alarm_threshold_um > 0.0, "scenario: alarm threshold must be > 0");
  require(channel.sample_rate_hz == sample_rate_hz,
          "scenario: channel sample rate differs from the emission rate");
  require(wind.sample_rate_hz == sample_rate_hz,
          "scenario: wind sample rate differs from the emission rate");
  require(receiver.substeps >= 1, "scenario: receiver substeps must be >= 1");
  uptake.validate();
  enzymes.validate();
  wind.validate();
  loss.validate();
  channel.validate();
  if ((rx_position - channel.tx_position).norm() < kMinSeparation)
    throw GeometryError("scenario: receiver closer than 1 mm to transmitter");
}

EmissionSignal scenario_emission(const Scenario &s, double horizon_s) {
  const std::size_t n = samples_for(horizon_s, s.sample_rate_hz);
  EmissionConfig ec;
  ec.symbol_period_s = s.symbol_period_s;
  ec.sample_rate_hz = s.sample_rate_hz;
  ec.amplitudes = s.amplitudes;
  if (!s.bits.empty()) {
    ec.bits = s.bits;
  } else {
    const std::size_t sps = ec.samples_per_symbol();
    const std::size_t count = s.n_bits ? s.n_bits : (n + sps - 1) / sps;
    auto engine = SeedTree(s.seed).engine("bits");
    ec.bits = random_bits(count, engine);
  }
  return build_emission_signal(ec).resized(n);
}

WindModel regime_model(const Scenario &s, const std::string &regime) {
  WindModel m;
  if (regime == s.wind_regime) {
    m = s.wind;
  } else if (auto named = wind_regime(regime)) {
    m = *named;
  } else {
    throw ConfigError("unknown wind regime '" + regime + "'");
  }
  m.sample_rate_hz = s.sample_rate_hz;
  m.seed = SeedTree(s.seed).derive("wind");
  return m;
}

WindPath scenario_wind(const Scenario &s, const std::string &regime,
                       double horizon_s) {
  return sample_wind_path(regime_model(s, regime),
                          std::max<std::size_t>(
                              1, samples_for(horizon_s, s.sample_rate_hz)));
}

std::vector<ReceiverOutcome>
run_receivers(const Scenario &s, const EmissionSignal &signal,
              const WindPath &wind, const ChannelConfig &channel,
              const std::vector<Vec3> &positions,
              const std::string &stream_prefix, unsigned workers,
              std::vector<ReceiverTrajectory> *trajectories,
              std::vector<ConcentrationTrace> *air) {
  for (const auto &p : positions)
    if ((p - channel.tx_position).norm() < kMinSeparation)
      throw GeometryError("receiver at " + to_string(p) +
                          " is closer than 1 mm to the transmitter");
  const SeedTree seeds(s.seed);
  const ReceiverOptions options = receiver_options(s, trajectories != nullptr);
  std::vector<ReceiverOutcome> outcomes(positions.size());
  if (trajectories)
    trajectories->assign(positions.size(), {});
  if (air)
    air->assign(positions.size(), {});
  // One receiver per task keeps peak memory at one trace per worker.
  parallel_for(positions.size(), workers, [&](std::size_t i) {
    auto traces = propagate(signal, wind, channel,
                            std::span<const Vec3>(&positions[i], 1), 1);
    ConcentrationTrace input =
        s.loss.enabled ? apply_loss(traces[0], s.loss, seeds,
                                    "/" + stream_prefix + "/" +
                                        std::to_string(i))
                       : traces[0];
    auto traj = integrate_receiver(input, s.enzymes, s.uptake, {}, options);
    outcomes[i] = outcome_of(traj, positions[i]);
    if (trajectories)
      (*trajectories)[i] = std::move(traj);
    if (air)
      (*air)[i] = std::move(traces[0]);
  });
  return outcomes;
}

// ---------------------------------------------------------------- pilots

std::string to_string(PilotMode m) {
  switch (m) {
  case PilotMode::Constant:
    return "constant";
  case PilotMode::SinglePulse:
    return "single_pulse";
  case PilotMode::Periodic:
    return "periodic";
  }
  return "?";
}

PilotMode parse_pilot_mode(const std::string &name) {
  for (PilotMode m :
       {PilotMode::Constant, PilotMode::SinglePulse, PilotMode::Periodic})
    if (to_string(m) == name)
      return m;
  throw ConfigError("unknown pilot mode '" + name + "'");
}

ScaledInputs parse_scaled_inputs(const std::string &label) {
  ScaledInputs s;
  s.label = label;
  if (label == "ALL") {
    s.scaled = {{true, true, true}};
  } else if (auto m = parse_molecule(label)) {
    s.scaled[*m] = true;
  } else {
    throw ConfigError("unknown scaled input set '" + label + "'");
  }
  return s;
}

void PilotConfig::validate() const {
  require(!modes.empty(), "pilot: modes must not be empty");
  require(!scaled_inputs.empty(), "pilot: scaled_inputs must not be empty");
  for (const auto &label : scaled_inputs)
    parse_scaled_inputs(label);
  require(!scaling_factors.empty(), "pilot: scaling_factors must not be empty");
  for (double f : scaling_factors)
    require(f > 0.0 && std::isfinite(f), "pilot: scaling factors must be > 0");
  require(!durations_s.empty(), "pilot: durations_s must not be empty");
  for (double d : durations_s)
    require(d > 0.0 && std::isfinite(d), "pilot: durations must be > 0");
  require(baseline >= 0.0 && std::isfinite(baseline),
          "pilot: baseline must be >= 0");
  require(pulse_on_s > 0.0, "pilot: pulse_on_s must be > 0");
  require(period_on_s > 0.0 && period_off_s >= 0.0,
          "pilot: period_on_s must be > 0 and period_off_s >= 0");
}

ConcentrationTrace pilot_input(PilotMode mode, const ScaledInputs &inputs,
                               double factor, const PilotConfig &cfg,
                               double duration_s, double sample_rate_hz) {
  const std::size_t n = samples_for(duration_s, sample_rate_hz);
  const double dt = 1.0 / sample_rate_hz;
  const double period = cfg.period_on_s + cfg.period_off_s;
  ConcentrationTrace trace;
  trace.sample_rate_hz = sample_rate_hz;
  for (Molecule m : kAllMolecules)
    trace.values[m].assign(n, cfg.baseline);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    bool on = true;
    if (mode == PilotMode::SinglePulse)
      on = t < cfg.pulse_on_s - 1e-9 * dt;
    else if (mode == PilotMode::Periodic)
      on = std::fmod(t + 1e-9 * dt, period) < cfg.period_on_s;
    if (!on)
      continue;
    for (Molecule m : kAllMolecules)
      if (inputs.scaled[m])
        trace.values[m][k] = cfg.baseline * factor;
  }
  return trace;
}

std::vector<PilotRow> run_linearity_pilot(const Scenario &s,
                                          const PilotConfig &cfg,
                                          unsigned workers) {
  cfg.validate();
  struct Job {
    PilotMode mode;
    ScaledInputs inputs;
    double factor;
  };
  std::vector<Job> jobs;
  for (PilotMode mode : cfg.modes)
    for (const auto &label : cfg.scaled_inputs)
      for (double f : cfg.scaling_factors)
        jobs.push_back({mode, parse_scaled_inputs(label), f});

  std::vector<double> durations = cfg.durations_s;
  std::sort(durations.begin(), durations.end());
  const double longest = durations.back();
  ReceiverOptions options = receiver_options(s, true);

  std::vector<std::vector<PilotRow>> rows(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    const Job &job = jobs[j];
    auto input = pilot_input(job.mode, job.inputs, job.factor, cfg, longest,
                             s.sample_rate_hz);
    auto traj = integrate_receiver(input, s.enzymes, s.uptake, {}, options);
    for (double d : durations) {
      const std::size_t last =
          std::min(samples_for(d, s.sample_rate_hz), traj.states.size() - 1);
      PilotRow row;
      row.mode = job.mode;
      row.inputs = job.inputs.label;
      row.scaling_factor = job.factor;
      row.duration_s = d;
      row.nonlinear_fraction = prefix_fraction(traj.states, last, s.enzymes);
      row.linear = is_linear(row.nonlinear_fraction);
      rows[j].push_back(row);
    }
  });
  std::vector<PilotRow> out;
  for (auto &r : rows)
    out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ------------------------------------------------------ frequency response

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0)
    throw ConfigError("log_space: need 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
  out.back() = hi;
  return out;
}

void FrequencyResponseConfig::validate(double sample_rate_hz) const {
  require(!frequencies_hz.empty(), "frequency_response: no frequencies");
  for (double f : frequencies_hz) {
    require(f > 0.0 && std::isfinite(f),
            "frequency_response: frequencies must be > 0");
    require(f <= 0.25 * sample_rate_hz,
            "frequency_response: frequencies must be <= fs/4");
  }
  require(amplitude > 0.0, "frequency_response: amplitude must be > 0");
  require(!molecules.empty(), "frequency_response: no molecules");
  require(min_periods >= 1.0, "frequency_response: min_periods must be >= 1");
  require(min_duration_s >= 0.0,
          "frequency_response: min_duration_s must be >= 0");
  require(discard_fraction >= 0.0 && discard_fraction < 1.0,
          "frequency_response: discard_fraction must be in [0, 1)");
}

SinusoidFit fit_sinusoid(const std::vector<double> &t,
                         const std::vector<double> &y, double frequency_hz) {
  if (t.size() != y.size() || t.size() < 3)
    throw std::invalid_argument("fit_sinusoid: need >= 3 matching samples");
  const auto n = static_cast<Eigen::Index>(t.size());
  const double w = 2.0 * std::numbers::pi * frequency_hz;
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    a(i, 0) = 1.0;
    a(i, 1) = std::cos(w * t[k]);
    a(i, 2) = std::sin(w * t[k]);
    b(i) = y[k];
  }
  // Column scaling keeps tiny concentrations well conditioned.
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(b / scale) * scale;
  SinusoidFit fit;
  fit.offset = x(0);
  // c cos + s sin = B cos(wt + phi) with B cos(phi) = c, -B sin(phi) = s.
  fit.amplitude = std::hypot(x(1), x(2));
  fit.phase = std::atan2(-x(2), x(1));
  const Eigen::VectorXd r = b - a * x;
  fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  return fit;
}

std::vector<FrequencyRow>
run_frequency_response(const Scenario &s, const FrequencyResponseConfig &cfg,
                       unsigned workers) {
  cfg.validate(s.sample_rate_hz);
  struct Job {
    Molecule molecule;
    double f;
  };
  std::vector<Job> jobs;
  for (Molecule m : cfg.molecules)
    for (double f : cfg.frequencies_hz)
      jobs.push_back({m, f});
  const double fs = s.sample_rate_hz;
  const ReceiverOptions options = receiver_options(s, true);
  std::vector<FrequencyRow> rows(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    const auto [m, f] = jobs[j];
    const double duration = std::max(cfg.min_periods / f, cfg.min_duration_s);
    const std::size_t n =
        static_cast<std::size_t>(std::ceil(duration * fs - 1e-9));
    ConcentrationTrace input;
    input.sample_rate_hz = fs;
    for (Molecule other : kAllMolecules)
      input.values[other].assign(n, 0.0);
    const double w = 2.0 * std::numbers::pi * f;
    for (std::size_t k = 0; k < n; ++k)
      input.values[m][k] =
          cfg.amplitude * (1.0 + std::cos(w * static_cast<double>(k) / fs));
    auto traj = integrate_receiver(input, s.enzymes, s.uptake, {}, options);

    const auto first = static_cast<std::size_t>(
        std::ceil(cfg.discard_fraction * static_cast<double>(n)));
    std::vector<double> t, y;
    t.reserve(traj.states.size() - first);
    y.reserve(traj.states.size() - first);
    for (std::size_t k = first; k < traj.states.size(); ++k) {
      t.push_back(traj.time_of(k));
      y.push_back(traj.states[k].c_o);
    }
    const SinusoidFit fit = fit_sinusoid(t, y, f);
    FrequencyRow row;
    row.molecule = m;
    row.frequency_hz = f;
    row.gain = fit.amplitude / (cfg.amplitude * 1e3);
    row.phase_rad = fit.phase;
    row.offset_um = fit.offset;
    row.residual_ratio = fit.amplitude > 0.0
                             ? fit.residual_rms / fit.amplitude
                             : std::numeric_limits<double>::infinity();
    row.warning = row.residual_ratio > 0.2;
    rows[j] = row;
  });
  return rows;
}

// ------------------------------------------------------ sensitivity heatmap

void HeatmapConfig::validate() const {
  require(!scale_85a.empty() && !scale_91r.empty(),
          "heatmap: scale grids must not be empty");
  for (double v : scale_85a)
    require(v > 0.0 && std::isfinite(v), "heatmap: scale_85a must be > 0");
  for (double v : scale_91r)
    require(v > 0.0 && std::isfinite(v), "heatmap: scale_91r must be > 0");
  parse_scaled_inputs(scaled_inputs);
  require(input_scaling > 0.0, "heatmap: input_scaling must be > 0");
  require(duration_s > 0.0, "heatmap: duration_s must be > 0");
  require(pilot.baseline >= 0.0, "heatmap: baseline must be >= 0");
  require(pilot.pulse_on_s > 0.0 && pilot.period_on_s > 0.0 &&
              pilot.period_off_s >= 0.0,
          "heatmap: invalid pulse timing");
}

std::vector<HeatmapCell> run_sensitivity_heatmap(const Scenario &s,
                                                 const HeatmapConfig &cfg,
                                                 unsigned workers) {
  cfg.validate();
  const auto inputs = parse_scaled_inputs(cfg.scaled_inputs);
  const auto input = pilot_input(cfg.mode, inputs, cfg.input_scaling,
                                 cfg.pilot, cfg.duration_s, s.sample_rate_hz);
  const std::size_t n85 = cfg.scale_85a.size(), n91 = cfg.scale_91r.size();
  const ReceiverOptions options = receiver_options(s, true);
  std::vector<HeatmapCell> cells(n85 * n91);
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    HeatmapCell cell;
    cell.scale_85a = cfg.scale_85a[idx / n91];
    cell.scale_91r = cfg.scale_91r[idx % n91];
    EnzymeSet e = s.enzymes;
    e.ugt85a.abundance_ppm *= cell.scale_85a;
    e.ugt85a.e_total *= cell.scale_85a;
    e.ugt91r.abundance_ppm *= cell.scale_91r;
    e.ugt91r.e_total *= cell.scale_91r;
    auto traj = integrate_receiver(input, e, s.uptake, {}, options);
    cell.nonlinear_fraction = linearity_fraction(traj.states, e);
    cell.linear = is_linear(cell.nonlinear_fraction);
    cells[idx] = cell;
  });
  return cells;
}

FlipCounts classification_flips(const std::vector<HeatmapCell> &cells,
                                std::size_t n_85a, std::size_t n_91r) {
  if (cells.size() != n_85a * n_91r)
    throw std::invalid_argument("classification_flips: size mismatch");
  FlipCounts c;
  for (std::size_t i = 0; i < n_85a; ++i)
    for (std::size_t j = 0; j < n_91r; ++j) {
      const bool here = cells[i * n_91r + j].linear;
      if (i + 1 < n_85a && cells[(i + 1) * n_91r + j].linear != here)
        ++c.along_85a;
      if (j + 1 < n_91r && cells[i * n_91r + j + 1].linear != here)
        ++c.along_91r;
    }
  return c;
}

// ----------------------------------------------------------- distance sweep

void DistanceSweepConfig::validate() const {
  require(!regimes.empty(), "distance_sweep: regimes must not be empty");
  require(!distances_m.empty(), "distance_sweep: distances must not be empty");
  for (double d : distances_m)
    require(d >= kMinSeparation && std::isfinite(d),
            "distance_sweep: distances must be >= 1 mm");
  require(horizon_s > 0.0, "distance_sweep: horizon_s must be > 0");
}

std::vector<DistanceRow> run_distance_sweep(const Scenario &s,
                                            const DistanceSweepConfig &cfg,
                                            unsigned workers) {
  cfg.validate();
  const ChannelConfig channel = campaign_channel(s, cfg.horizon_s);
  const EmissionSignal signal = scenario_emission(s, cfg.horizon_s);
  std::vector<Vec3> positions;
  for (double d : cfg.distances_m)
    positions.push_back(channel.tx_position + Vec3{d, 0.0, 0.0});
  std::vector<DistanceRow> rows;
  for (const auto &regime : cfg.regimes) {
    const WindPath wind = scenario_wind(s, regime, cfg.horizon_s);
    auto outcomes = run_receivers(s, signal, wind, channel, positions,
                                  "distance/" + regime, workers);
    for (std::size_t i = 0; i < positions.size(); ++i)
      rows.push_back({regime, cfg.distances_m[i], outcomes[i]});
  }
  return rows;
}

// --------------------------------------------------------------- alarm map

std::vector<Vec3> AlarmMapConfig::grid(const Vec3 &tx) const {
  std::vector<Vec3> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out.push_back({x_min + (static_cast<double>(i) + 0.5) * (x_max - x_min) /
                                 static_cast<double>(nx),
                     y_min + (static_cast<double>(j) + 0.5) * (y_max - y_min) /
                                 static_cast<double>(ny),
                     tx.z});
  return out;
}

void AlarmMapConfig::validate(const Vec3 &tx) const {
  require(nx >= 1 && ny >= 1, "alarm_map: nx and ny must be >= 1");
  require(x_max > x_min && y_max > y_min, "alarm_map: empty rectangle");
  require(duration_s > 0.0, "alarm_map: duration_s must be > 0");
  for (std::size_t i = 0; i < snapshot_times_s.size(); ++i) {
    require(snapshot_times_s[i] >= 0.0 && snapshot_times_s[i] <= duration_s,
            "alarm_map: snapshot times must lie in [0, duration_s]");
    require(i == 0 || snapshot_times_s[i] > snapshot_times_s[i - 1],
            "alarm_map: snapshot times must increase");
  }
  for (const auto &p : grid(tx))
    if ((p - tx).norm() < kMinSeparation)
      throw GeometryError("alarm_map: grid point " + to_string(p) +
                          " is closer than 1 mm to the transmitter");
}

std::size_t AlarmMapResult::alarmed_count(std::size_t snapshot) const {
  const auto &row = alarmed.at(snapshot);
  return static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
}

AlarmMapResult run_alarm_map(const Scenario &s, const AlarmMapConfig &cfg,
                             unsigned workers) {
  const ChannelConfig channel = campaign_channel(s, cfg.duration_s);
  cfg.validate(channel.tx_position);
  AlarmMapResult r;
  r.positions = cfg.grid(channel.tx_position);
  r.snapshot_times_s = cfg.snapshot_times_s.empty()
                           ? std::vector<double>{cfg.duration_s}
                           : cfg.snapshot_times_s;
  const EmissionSignal signal = scenario_emission(s, cfg.duration_s);
  const WindPath wind = scenario_wind(s, cfg.regime, cfg.duration_s);
  r.outcomes = run_receivers(s, signal, wind, channel, r.positions,
                             "alarm_map/" + cfg.regime, workers);
  for (double t : r.snapshot_times_s) {
    std::vector<bool> row;
    for (const auto &o : r.outcomes)
      row.push_back(o.alarm_time && *o.alarm_time <= t + 1e-9);
    r.alarmed.push_back(std::move(row));
  }
  return r;
}

// ---------------------------------------------------- single-GLV comparison

SingleGlvResult run_single_glv_comparison(const Scenario &s,
                                          const SingleGlvConfig &cfg,
                                          unsigned workers,
                                          const std::vector<Molecule> &order) {
  require(cfg.horizon_s > 0.0, "single_glv: horizon_s must be > 0");
  require(cfg.output_stride >= 1, "single_glv: output_stride must be >= 1");
  const ChannelConfig channel = campaign_channel(s, cfg.horizon_s);
  const auto budget = carbon_budget_amplitudes(s.amplitudes);
  const WindPath wind = scenario_wind(s, cfg.regime, cfg.horizon_s);
  SingleGlvResult result;
  result.carbon_budget = budget.budget;
  result.runs.resize(order.size());
  parallel_for(order.size(), workers, [&](std::size_t i) {
    const Molecule active = order[i];
    Scenario one = s;
    one.amplitudes = budget.scenarios[active];
    const EmissionSignal signal = scenario_emission(one, cfg.horizon_s);
    std::vector<ReceiverTrajectory> traj;
    auto outcomes =
        run_receivers(one, signal, wind, channel, {cfg.rx_position},
                      "single_glv/" + std::string(molecule_name(active)), 1, &traj);
    SingleGlvRun &run = result.runs[i];
    run.active = active;
    run.amplitudes = one.amplitudes;
    run.trajectory = std::move(traj[0]);
    run.outcome = outcomes[0];
  });
  return result;
}

// ---------------------------------------------------------- point to point

PointToPointResult run_point_to_point(const Scenario &s,
                                      const PointToPointConfig &cfg) {
  require(cfg.horizon_s > 0.0, "point_to_point: horizon_s must be > 0");
  require(cfg.output_stride >= 1, "point_to_point: output_stride must be >= 1");
  const ChannelConfig channel = campaign_channel(s, cfg.horizon_s);
  const EmissionSignal signal = scenario_emission(s, cfg.horizon_s);
  const WindPath wind = scenario_wind(s, s.wind_regime, cfg.horizon_s);
  std::vector<ReceiverTrajectory> traj;
  std::vector<ConcentrationTrace> air;
  auto outcomes = run_receivers(s, signal, wind, channel, {s.rx_position},
                                "point_to_point", 1, &traj, &air);
  PointToPointResult r;
  r.air = std::move(air[0]);
  r.lossy_air = s.loss.enabled
                    ? apply_loss(r.air, s.loss, SeedTree(s.seed),
                                 "/point_to_point/0")
                    : r.air;
  r.trajectory = std::move(traj[0]);
  r.outcome = outcomes[0];
  return r;
}

} // namespace glvsim
