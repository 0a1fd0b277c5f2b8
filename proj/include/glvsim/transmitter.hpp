#pragma once

#include "glvsim/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace glvsim {

/// One bit per herbivore bite slot: 1 = bite (emission pulse), 0 = none.
using BitSequence = std::vector<std::uint8_t>;

struct EmissionConfig {
  BitSequence bits;
  double symbol_period_s = 2.0;
  PerMolecule<double> amplitudes{}; // mol/s
  double sample_rate_hz = 10.0;

  /// Samples per symbol; throws ConfigError unless T_sym * fs is a
  /// positive integer.
  std::size_t samples_per_symbol() const;
  void validate() const;
};

/// Per-molecule emission rate q(t) in mol/s, sampled uniformly.
struct EmissionSignal {
  PerMolecule<std::vector<double>> samples;
  double sample_rate_hz = 10.0;

  std::size_t size() const { return samples[Molecule::HAL].size(); }
  double dt() const { return 1.0 / sample_rate_hz; }
  /// Emitted mass sum(q * dt) for one molecule, in mol.
  double emitted_mass(Molecule m) const;
  /// Copy extended (zero-padded) or truncated to n samples.
  EmissionSignal resized(std::size_t n) const;
};

/// Rectangular pulse train: every sample of symbol k equals bit_k * A_m.
EmissionSignal build_emission_signal(const EmissionConfig &cfg);

/// Equiprobable bits drawn from the given engine.
BitSequence random_bits(std::size_t count, std::mt19937_64 &engine);

/// Parses a string of '0'/'1' characters.
BitSequence parse_bit_string(std::string_view text);
std::string format_bit_string(const BitSequence &bits);

inline constexpr PerMolecule<int> kCarbonCounts{{6, 6, 8}};

struct CarbonBudget {
  /// Total carbon emission rate sum_m A_m * carbons_m (mol/s).
  double budget = 0.0;
  /// scenarios[active] holds B / carbons_active for the active molecule and
  /// zero for the other two.
  PerMolecule<PerMolecule<double>> scenarios;
};

CarbonBudget carbon_budget_amplitudes(const PerMolecule<double> &base,
                                      const PerMolecule<int> &carbons =
                                          kCarbonCounts);

} // namespace glvsim
