#include "glvsim/wind.hpp"

#include <cmath>
#include <random>

namespace glvsim {

void WindModel::validate() const {
  if (!(std_x >= 0.0) || !(std_y >= 0.0))
    throw ConfigError("wind: std must be >= 0");
  if (!std::isfinite(mean_x) || !std::isfinite(mean_y) ||
      !std::isfinite(std_x) || !std::isfinite(std_y))
    throw ConfigError("wind: parameters must be finite");
  if (!(sample_rate_hz > 0.0))
    throw ConfigError("wind: sample_rate_hz must be > 0");
}

std::optional<WindModel> wind_regime(std::string_view name) {
  WindModel m;
  if (name == "directed") {
    m.mean_x = 0.2;
    m.std_x = m.std_y = 0.01;
  } else if (name == "nondirected_strong") {
    m.std_x = m.std_y = 0.5;
  } else if (name == "nondirected_weak") {
    m.std_x = m.std_y = 0.01;
  } else {
    return std::nullopt;
  }
  return m;
}

std::vector<std::string> wind_regime_names() {
  return {"directed", "nondirected_strong", "nondirected_weak"};
}

namespace {

WindPath path_from_velocities(std::vector<Vec3> velocities,
                              double sample_rate_hz) {
  WindPath path;
  path.sample_rate_hz = sample_rate_hz;
  path.velocities = std::move(velocities);
  path.displacement.resize(path.velocities.size());
  const double dt = 1.0 / sample_rate_hz;
  Vec3 w{};
  for (std::size_t n = 0; n < path.velocities.size(); ++n) {
    path.displacement[n] = w;
    w += path.velocities[n] * dt;
  }
  return path;
}

} // namespace

WindPath sample_wind_path(const WindModel &model, std::size_t n_samples) {
  model.validate();
  if (n_samples == 0)
    throw ConfigError("wind: n_samples must be >= 1");
  std::mt19937_64 engine(model.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> v(n_samples);
  for (auto &s : v) {
    const double zx = unit(engine);
    const double zy = unit(engine);
    s = {model.mean_x + model.std_x * zx, model.mean_y + model.std_y * zy, 0.0};
  }
  return path_from_velocities(std::move(v), model.sample_rate_hz);
}

WindPath constant_wind_path(const Vec3 &velocity, std::size_t n_samples,
                            double sample_rate_hz) {
  if (n_samples == 0)
    throw ConfigError("wind: n_samples must be >= 1");
  if (!(sample_rate_hz > 0.0))
    throw ConfigError("wind: sample_rate_hz must be > 0");
  return path_from_velocities(std::vector<Vec3>(n_samples, velocity),
                              sample_rate_hz);
}

} // namespace glvsim
