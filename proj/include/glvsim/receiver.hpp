#pragma once

#include "glvsim/channel.hpp"
#include "glvsim/leaf_uptake.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glvsim {

struct EnzymeParams {
  std::string name;
  double k_cat = 0.0;        // 1/s
  double k_m = 0.0;          // uM
  double abundance_ppm = 0.0;
  double e_total = 0.0;      // uM

  void validate() const;
};

/// The four enzymes of the HEXVic pathway: CHR (HAL -> HOL), CXE
/// (HAC -> HOL), 85A (HOL -> HEXGlc) and 91R (HEXGlc -> HEXVic).
struct EnzymeSet {
  EnzymeParams chr;
  EnzymeParams cxe;
  EnzymeParams ugt85a;
  EnzymeParams ugt91r;

  void validate() const;
};

/// Michaelis-Menten rate k_cat * e_total * c / (k_m + c) in uM/s.
double mm_rate(double c, const EnzymeParams &e);

/// Cytosolic concentrations in uM.
struct ReceiverState {
  double c_a = 0.0; // HAL
  double c_t = 0.0; // HAC
  double c_o = 0.0; // HOL
  double c_g = 0.0; // HEXGlc
  double c_v = 0.0; // HEXVic

  double total() const { return c_a + c_t + c_o + c_g + c_v; }
};

struct ReceiverOptions {
  /// RK4 steps per input sample.
  std::size_t substeps = 1;
  /// Evaluate absorption once per step from the step's initial state
  /// instead of at every stage.
  bool per_sample_absorption = false;
  bool store_states = true;
  /// When set, the alarm sample index is tracked during integration.
  std::optional<double> alarm_threshold_um;
};

struct ReceiverTrajectory {
  double dt = 0.1;
  /// states[n] at t = n * dt, n = 0 .. N (empty unless store_states).
  std::vector<ReceiverState> states;
  /// Cytosolic absorption rate (uM/s) at states[n] with input sample
  /// min(n, N - 1) (empty unless store_states).
  PerMolecule<std::vector<double>> absorption;
  ReceiverState final_state;
  std::size_t steps = 0;
  std::size_t clamp_events = 0;
  /// Largest per-step |delta(sum of states) - integrated absorption|,
  /// relative to the step's total activity. Steps with clamps are skipped.
  double max_mass_balance_residual = 0.0;
  std::optional<std::size_t> alarm_index;
  std::optional<std::size_t> nonlinear_index;
  std::size_t nonlinear_samples = 0;
  std::size_t samples = 0;

  double time_of(std::size_t n) const { return static_cast<double>(n) * dt; }
};

/// Integrates the five-state pathway with classic RK4. Input air
/// concentrations (mol/m^3) are held at their sample value over each
/// interval; the trajectory has N + 1 states for N input samples.
/// Throws NumericError on a non-finite state.
ReceiverTrajectory integrate_receiver(const ConcentrationTrace &air,
                                      const EnzymeSet &enzymes,
                                      const UptakeParams &uptake,
                                      const ReceiverState &initial = {},
                                      const ReceiverOptions &options = {});

/// max(c_a / k_m_CHR, c_t / k_m_CXE, c_o / k_m_85A, c_g / k_m_91R).
double linearity_ratio(const ReceiverState &s, const EnzymeSet &e);

inline constexpr double kLinearityRatioLimit = 0.1;
inline constexpr double kLinearFractionLimit = 0.02;

/// Fraction of states with ratio > 0.1.
double linearity_fraction(const std::vector<ReceiverState> &states,
                          const EnzymeSet &e);
inline bool is_linear(double fraction) {
  return fraction <= kLinearFractionLimit;
}

/// First state time with c_v >= threshold.
std::optional<double> alarm_time(const std::vector<ReceiverState> &states,
                                 double dt, double threshold_um);
/// First state time with ratio > 0.1.
std::optional<double> linearity_time(const std::vector<ReceiverState> &states,
                                     double dt, const EnzymeSet &e);

} // namespace glvsim
