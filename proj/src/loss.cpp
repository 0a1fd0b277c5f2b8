#include "glvsim/loss.hpp"

#include <cmath>
#include <string>

namespace glvsim {

BetaParams beta_params_from_mean_cv(double mean, double cv) {
  if (!(mean > 0.0) || !(mean <= 1.0))
    throw ConfigError("loss: mean must lie in (0, 1], got " +
                      std::to_string(mean));
  if (!(cv >= 0.0) || !std::isfinite(cv))
    throw ConfigError("loss: cv must be >= 0, got " + std::to_string(cv));
  BetaParams p;
  p.mean = mean;
  if (cv == 0.0) {
    p.deterministic = true;
    return p;
  }
  const double bound = (1.0 - mean) / mean;
  if (!(cv * cv < bound))
    throw ConfigError("loss: infeasible Beta moments, cv^2 = " +
                      std::to_string(cv * cv) +
                      " must be < (1 - mean) / mean = " + std::to_string(bound));
  const double variance = (mean * cv) * (mean * cv);
  const double nu = mean * (1.0 - mean) / variance - 1.0;
  p.alpha = mean * nu;
  p.beta = (1.0 - mean) * nu;
  return p;
}

void LossModel::validate() const {
  if (!enabled)
    return;
  for (Molecule m : kAllMolecules) {
    try {
      beta_params_from_mean_cv(mean[m], cv[m]);
    } catch (const ConfigError &e) {
      throw ConfigError(std::string(e.what()) + " (" +
                        std::string(molecule_name(m)) + ")");
    }
  }
}

BetaSampler::BetaSampler(const BetaParams &p)
    : params_(p), x_(p.deterministic ? 1.0 : p.alpha, 1.0),
      y_(p.deterministic ? 1.0 : p.beta, 1.0) {}

double BetaSampler::operator()(std::mt19937_64 &engine) {
  if (params_.deterministic)
    return params_.mean;
  const double x = x_(engine);
  const double y = y_(engine);
  return x / (x + y);
}

std::string loss_stream_name(Molecule m) {
  return "loss:" + std::string(molecule_name(m));
}

ConcentrationTrace apply_loss(const ConcentrationTrace &trace,
                              const LossModel &model, const SeedTree &seeds,
                              const std::string &stream_suffix) {
  model.validate();
  if (!model.enabled)
    return trace;
  ConcentrationTrace out = trace;
  for (Molecule m : kAllMolecules) {
    BetaSampler sampler(beta_params_from_mean_cv(model.mean[m], model.cv[m]));
    auto engine = seeds.engine(loss_stream_name(m) + stream_suffix);
    for (double &c : out.values[m]) {
      if (!(c >= 0.0) || !std::isfinite(c))
        throw NumericError("loss: input concentration must be finite and "
                           ">= 0");
      c *= sampler(engine);
    }
  }
  return out;
}

} // namespace glvsim
