#pragma once

#include "glvsim/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glvsim {

/// Discrete-time white Gaussian wind in the horizontal plane. There is no
/// vertical wind component.
struct WindModel {
  double mean_x = 0.0; // m/s
  double mean_y = 0.0;
  double std_x = 0.0;
  double std_y = 0.0;
  double sample_rate_hz = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Named regimes: "directed", "nondirected_strong", "nondirected_weak".
std::optional<WindModel> wind_regime(std::string_view name);
std::vector<std::string> wind_regime_names();

/// One realization of the wind and its cumulative displacement
/// W[n] = sum_{k<n} v[k] * dt (so W[0] = 0). Velocities are held constant
/// over each sample interval.
struct WindPath {
  std::vector<Vec3> velocities;
  std::vector<Vec3> displacement;
  double sample_rate_hz = 10.0;

  std::size_t size() const { return velocities.size(); }
  double dt() const { return 1.0 / sample_rate_hz; }
  /// Displacement at time k*dt + s for 0 <= s <= dt.
  Vec3 displacement_at(std::size_t k, double s) const {
    return displacement[k] + velocities[k] * s;
  }
};

/// Draws n_samples velocity samples from an engine seeded with model.seed.
WindPath sample_wind_path(const WindModel &model, std::size_t n_samples);

/// Path with every velocity equal to v (for tests and calm-air checks).
WindPath constant_wind_path(const Vec3 &velocity, std::size_t n_samples,
                            double sample_rate_hz);

} // namespace glvsim
