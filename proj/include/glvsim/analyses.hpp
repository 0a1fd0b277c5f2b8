#pragma once

#include "glvsim/channel.hpp"
#include "glvsim/loss.hpp"
#include "glvsim/receiver.hpp"
#include "glvsim/transmitter.hpp"
#include "glvsim/wind.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glvsim {

/// Everything a campaign needs about the physical setup. Campaigns take the
/// channel settings from `channel` and replace only its horizon.
struct Scenario {
  std::uint64_t seed = 1;
  PerMolecule<double> amplitudes{};
  double symbol_period_s = 2.0;
  double sample_rate_hz = 10.0;
  /// Explicit bits; when empty, `n_bits` equiprobable bits are drawn from
  /// the "bits" stream (enough to cover the horizon when n_bits is 0).
  BitSequence bits;
  std::size_t n_bits = 0;

  UptakeParams uptake;
  EnzymeSet enzymes;
  double alarm_threshold_um = 0.0;

  std::string wind_regime = "directed";
  WindModel wind;
  LossModel loss;

  ChannelConfig channel;
  ReceiverOptions receiver;
  Vec3 rx_position{0.15, 0.0, 1.0};

  void validate() const;
};

/// Emission signal for `horizon_s` (bits per `s.bits` / `s.n_bits`).
EmissionSignal scenario_emission(const Scenario &s, double horizon_s);
/// Wind realization of `regime` covering `horizon_s`, seeded from the
/// "wind" stream of the master seed.
WindPath scenario_wind(const Scenario &s, const std::string &regime,
                       double horizon_s);
WindModel regime_model(const Scenario &s, const std::string &regime);

/// Result of one receiver run through loss and kinetics.
struct ReceiverOutcome {
  Vec3 position;
  std::optional<double> alarm_time;
  std::optional<double> linearity_time;
  double nonlinear_fraction = 0.0;
  ReceiverState final_state;
  std::size_t clamp_events = 0;
  double max_mass_balance_residual = 0.0;
};

/// Channel -> loss -> receiver for each position, sharing one wind path.
/// `stream_prefix` keys the loss substreams per cell ("<prefix>/<index>").
/// When `trajectories` is non-null the full trajectories are kept.
std::vector<ReceiverOutcome>
run_receivers(const Scenario &s, const EmissionSignal &signal,
              const WindPath &wind, const ChannelConfig &channel,
              const std::vector<Vec3> &positions,
              const std::string &stream_prefix, unsigned workers,
              std::vector<ReceiverTrajectory> *trajectories = nullptr,
              std::vector<ConcentrationTrace> *air = nullptr);

// ---------------------------------------------------------------- pilots

enum class PilotMode { Constant, SinglePulse, Periodic };
std::string to_string(PilotMode m);
PilotMode parse_pilot_mode(const std::string &name);

/// A subset of molecules to scale, written "HAL", "HOL", "HAC" or "ALL".
struct ScaledInputs {
  std::string label;
  PerMolecule<bool> scaled{};
};
ScaledInputs parse_scaled_inputs(const std::string &label);

struct PilotConfig {
  std::vector<PilotMode> modes{PilotMode::Constant, PilotMode::SinglePulse,
                               PilotMode::Periodic};
  std::vector<std::string> scaled_inputs{"HAL", "HOL", "HAC", "ALL"};
  std::vector<double> scaling_factors;
  /// Fractions are reported over [0, d] for every d; one run of the longest
  /// duration serves all of them.
  std::vector<double> durations_s{600.0};
  double baseline = 1e-12; // mol/m^3
  double pulse_on_s = 10.0;
  double period_on_s = 10.0;
  double period_off_s = 10.0;

  void validate() const;
};

/// Prescribed air concentrations: baseline everywhere, multiplied by
/// `factor` for scaled molecules while the mode's profile is on.
ConcentrationTrace pilot_input(PilotMode mode, const ScaledInputs &inputs,
                               double factor, const PilotConfig &cfg,
                               double duration_s, double sample_rate_hz);

struct PilotRow {
  PilotMode mode;
  std::string inputs;
  double scaling_factor = 0.0;
  double duration_s = 0.0;
  double nonlinear_fraction = 0.0;
  bool linear = true;
};

std::vector<PilotRow> run_linearity_pilot(const Scenario &s,
                                          const PilotConfig &cfg,
                                          unsigned workers = 1);

// ------------------------------------------------------ frequency response

struct FrequencyResponseConfig {
  std::vector<double> frequencies_hz;
  double amplitude = 5e-11; // mol/m^3
  std::vector<Molecule> molecules{Molecule::HAL, Molecule::HOL, Molecule::HAC};
  double min_periods = 20.0;
  double min_duration_s = 200.0;
  double discard_fraction = 0.25;

  void validate(double sample_rate_hz) const;
};

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t n);

struct FrequencyRow {
  Molecule molecule;
  double frequency_hz = 0.0;
  double gain = 0.0;      // B / (A in umol/L)
  double phase_rad = 0.0;
  double offset_um = 0.0; // B0
  double residual_ratio = 0.0;
  bool warning = false;   // residual_ratio > 0.2
};

/// Least-squares fit y ~ b0 + b cos(2 pi f t + phi) over the samples.
struct SinusoidFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double residual_rms = 0.0;
};
SinusoidFit fit_sinusoid(const std::vector<double> &t,
                         const std::vector<double> &y, double frequency_hz);

std::vector<FrequencyRow>
run_frequency_response(const Scenario &s, const FrequencyResponseConfig &cfg,
                       unsigned workers = 1);

// ------------------------------------------------------ sensitivity heatmap

struct HeatmapConfig {
  std::vector<double> scale_85a{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> scale_91r{0.25, 0.5, 1.0, 2.0, 4.0};
  PilotMode mode = PilotMode::Periodic;
  std::string scaled_inputs = "ALL";
  double input_scaling = 1.0;
  double duration_s = 3600.0;
  PilotConfig pilot; // baseline and on/off timing

  void validate() const;
};

struct HeatmapCell {
  double scale_85a = 1.0;
  double scale_91r = 1.0;
  double nonlinear_fraction = 0.0;
  bool linear = true;
};

/// Row-major over (scale_85a, scale_91r).
std::vector<HeatmapCell> run_sensitivity_heatmap(const Scenario &s,
                                                 const HeatmapConfig &cfg,
                                                 unsigned workers = 1);

struct FlipCounts {
  std::size_t along_85a = 0;
  std::size_t along_91r = 0;
};
/// Adjacent-cell classification changes along each axis.
FlipCounts classification_flips(const std::vector<HeatmapCell> &cells,
                                std::size_t n_85a, std::size_t n_91r);

// ----------------------------------------------------------- distance sweep

struct DistanceSweepConfig {
  std::vector<std::string> regimes{"directed", "nondirected_strong",
                                   "nondirected_weak"};
  std::vector<double> distances_m;
  double horizon_s = 14400.0;

  void validate() const;
};

struct DistanceRow {
  std::string regime;
  double distance_m = 0.0;
  ReceiverOutcome outcome;
};

std::vector<DistanceRow> run_distance_sweep(const Scenario &s,
                                            const DistanceSweepConfig &cfg,
                                            unsigned workers = 1);

// --------------------------------------------------------------- alarm map

struct AlarmMapConfig {
  std::size_t nx = 4;
  std::size_t ny = 4;
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  /// Empty means a single snapshot at duration_s.
  std::vector<double> snapshot_times_s;
  std::string regime = "nondirected_strong";
  double duration_s = 14400.0;

  /// Centres of an nx x ny partition of the rectangle, at the
  /// transmitter height; x varies fastest.
  std::vector<Vec3> grid(const Vec3 &tx) const;
  void validate(const Vec3 &tx) const;
};

struct AlarmMapResult {
  std::vector<Vec3> positions;
  std::vector<ReceiverOutcome> outcomes;
  std::vector<double> snapshot_times_s;
  /// alarmed[s][i]: receiver i alarmed by snapshot s.
  std::vector<std::vector<bool>> alarmed;

  std::size_t alarmed_count(std::size_t snapshot) const;
};

AlarmMapResult run_alarm_map(const Scenario &s, const AlarmMapConfig &cfg,
                             unsigned workers = 1);

// ---------------------------------------------------- single-GLV comparison

struct SingleGlvConfig {
  std::string regime = "directed";
  Vec3 rx_position{0.20, 0.0, 1.0};
  double horizon_s = 14400.0;
  std::size_t output_stride = 10;
};

struct SingleGlvRun {
  Molecule active;
  PerMolecule<double> amplitudes{};
  ReceiverTrajectory trajectory;
  ReceiverOutcome outcome;
};

struct SingleGlvResult {
  double carbon_budget = 0.0;
  std::vector<SingleGlvRun> runs; // HAL, HOL, HAC order
};

/// `order` lists the molecules to run (default all three).
SingleGlvResult run_single_glv_comparison(
    const Scenario &s, const SingleGlvConfig &cfg, unsigned workers = 1,
    const std::vector<Molecule> &order = {Molecule::HAL, Molecule::HOL,
                                          Molecule::HAC});

// ---------------------------------------------------------- point to point

struct PointToPointConfig {
  double horizon_s = 14400.0;
  std::size_t output_stride = 10;
};

struct PointToPointResult {
  ConcentrationTrace air;       // before loss
  ConcentrationTrace lossy_air; // receiver input
  ReceiverTrajectory trajectory;
  ReceiverOutcome outcome;
};

PointToPointResult run_point_to_point(const Scenario &s,
                                      const PointToPointConfig &cfg);

} // namespace glvsim
