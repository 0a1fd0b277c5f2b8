#pragma once

#include "glvsim/channel.hpp"
#include "glvsim/rng.hpp"
#include "glvsim/types.hpp"

#include <random>

namespace glvsim {

struct BetaParams {
  double alpha = 0.0;
  double beta = 0.0;
  /// True when cv == 0: the factor is the constant `mean`.
  bool deterministic = false;
  double mean = 1.0;
};

/// Moment-matched Beta parameters for a multiplicative loss factor.
/// Throws ConfigError naming the violated bound when the pair is infeasible
/// (mean outside (0, 1], cv < 0, or cv^2 >= (1 - mean) / mean).
BetaParams beta_params_from_mean_cv(double mean, double cv);

/// Per-molecule random multiplicative loss applied to air concentrations.
struct LossModel {
  bool enabled = true;
  PerMolecule<double> mean{{0.85, 0.85, 0.85}};
  PerMolecule<double> cv{{0.15, 0.15, 0.15}};

  void validate() const;
};

/// Draws Beta(alpha, beta) as X / (X + Y) with gamma variates.
class BetaSampler {
public:
  explicit BetaSampler(const BetaParams &p);
  double operator()(std::mt19937_64 &engine);

private:
  BetaParams params_;
  std::gamma_distribution<double> x_;
  std::gamma_distribution<double> y_;
};

/// Substream name for a molecule's loss factors, e.g. "loss:HOL".
std::string loss_stream_name(Molecule m);

/// out[n] = trace[n] * L_m[n] with L i.i.d. per sample from the molecule's
/// own substream of `seeds`. `stream_suffix` distinguishes receivers
/// (e.g. "/rx3"); every receiver draws from its own substreams.
ConcentrationTrace apply_loss(const ConcentrationTrace &trace,
                              const LossModel &model, const SeedTree &seeds,
                              const std::string &stream_suffix = "");

} // namespace glvsim
