#pragma once

#include "glvsim/transmitter.hpp"
#include "glvsim/types.hpp"
#include "glvsim/wind.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace glvsim {

/// Minimum transmitter-receiver separation (m).
inline constexpr double kMinSeparation = 1e-3;

/// How the superposition sum over past emissions is evaluated.
enum class ChannelMethod {
  /// Every emission sample, no skipping. O(N^2) per receiver.
  Direct,
  /// Direct, but skips sample ranges whose bounded contribution is below
  /// truncation_ratio times the running maximum of the trace (or underflows
  /// to zero). Identical terms otherwise.
  Truncated,
  /// Truncated, plus old emission ranges that are compact relative to
  /// their diffusion width are merged into one moment-matched Gaussian.
  Hierarchical,
};

/// How one zero-order-hold emission interval enters the sum.
enum class EmissionQuadrature {
  /// A point release of q[k]*dt at t = k*dt (plain impulse-train sum).
  Impulse,
  /// The release is spread along the interval: sub-releases follow the
  /// wind over [k*dt, (k+1)*dt), each treated as a moment-matched segment.
  Segment,
};

std::string to_string(ChannelMethod m);
std::string to_string(EmissionQuadrature q);
ChannelMethod parse_channel_method(const std::string &name);
EmissionQuadrature parse_emission_quadrature(const std::string &name);

struct ChannelConfig {
  Vec3 tx_position{0.0, 0.0, 1.0};
  PerMolecule<double> diffusivity{{8.0718e-6, 7.9291e-6, 6.7698e-6}};
  double sample_rate_hz = 10.0;
  double horizon_s = 60.0;

  ChannelMethod method = ChannelMethod::Direct;
  EmissionQuadrature quadrature = EmissionQuadrature::Segment;
  /// Segment quadrature resolution: sub-release length and duration are
  /// kept below this fraction of the kernel width and lag.
  double quadrature_resolution = 0.1;
  /// Hierarchical merge criterion (same meaning, applied to whole ranges).
  double aggregation_tolerance = 0.1;
  double truncation_ratio = 1e-18;
  /// Hierarchical only: ranges whose bounded contribution is below this
  /// fraction of the running maximum are evaluated as one moment-matched
  /// Gaussian, capped at the bound.
  double coarse_ratio = 1e-9;
  std::size_t max_subdivisions = 64;

  std::size_t num_samples() const;
  double dt() const { return 1.0 / sample_rate_hz; }
  void validate() const;
};

/// Air concentration (mol/m^3) per molecule at one receiver, sampled at
/// t = n / fs for n = 0 .. N-1.
struct ConcentrationTrace {
  Vec3 position{};
  double sample_rate_hz = 10.0;
  PerMolecule<std::vector<double>> values;

  std::size_t size() const { return values[Molecule::HAL].size(); }
};

/// Free-space Gaussian kernel (4 pi D dt)^(-3/2) exp(-|offset|^2 / (4 D dt)),
/// in 1/m^3 per mol released. Throws std::domain_error when delta_t <= 0.
double impulse_response(double delta_t, const Vec3 &offset, double diffusivity);

/// Superposes time-varying impulse responses for every receiver. All
/// molecules share the wind realization. Receivers are independent and are
/// distributed over `workers` threads; results do not depend on the count.
std::vector<ConcentrationTrace> propagate(const EmissionSignal &signal,
                                          const WindPath &wind,
                                          const ChannelConfig &cfg,
                                          std::span<const Vec3> rx_positions,
                                          unsigned workers = 1);

/// Monte Carlo estimate of one molecule's trace at selected sample indices.
struct ParticleEstimate {
  std::vector<std::size_t> sample_indices;
  std::vector<double> mean;           // mol/m^3
  std::vector<double> standard_error; // mol/m^3
};

struct ParticleOracleOptions {
  std::size_t n_particles = 100000;
  double kernel_radius = 0.02; // m
  std::uint64_t seed = 1;
};

/// Independent random-walk check of the analytic channel. Particles are
/// released in proportion to q(t) and advance by v*dt + sqrt(2 D dt) xi per
/// sample with the same wind path; concentration is the count inside a
/// sphere around the receiver divided by its volume, times the mass per
/// particle. Between requested samples the per-step Gaussian increments are
/// summed in closed form, which leaves the particle law unchanged.
ParticleEstimate particle_oracle(const EmissionSignal &signal, Molecule molecule,
                                 const WindPath &wind, const ChannelConfig &cfg,
                                 const Vec3 &rx_position,
                                 std::span<const std::size_t> sample_indices,
                                 const ParticleOracleOptions &options);

} // namespace glvsim
