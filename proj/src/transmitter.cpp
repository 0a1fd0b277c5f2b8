#include "glvsim/transmitter.hpp"

#include <cmath>
#include <string>

namespace glvsim {

std::size_t EmissionConfig::samples_per_symbol() const {
  if (!(symbol_period_s > 0.0))
    throw ConfigError("transmitter: symbol_period_s must be > 0");
  if (!(sample_rate_hz > 0.0))
    throw ConfigError("transmitter: sample_rate_hz must be > 0");
  const double product = symbol_period_s * sample_rate_hz;
  const double rounded = std::round(product);
  if (rounded < 1.0 || std::abs(product - rounded) > 1e-9 * product)
    throw ConfigError("transmitter: symbol_period_s * sample_rate_hz = " +
                      std::to_string(product) +
                      " is not a positive integer");
  return static_cast<std::size_t>(rounded);
}

void EmissionConfig::validate() const {
  samples_per_symbol();
  if (bits.empty())
    throw ConfigError("transmitter: empty bit sequence");
  for (std::uint8_t b : bits)
    if (b > 1)
      throw ConfigError("transmitter: bits must be 0 or 1");
  for (Molecule m : kAllMolecules)
    if (!(amplitudes[m] >= 0.0) || !std::isfinite(amplitudes[m]))
      throw ConfigError("transmitter: amplitude for " +
                        std::string(molecule_name(m)) + " must be >= 0");
}

double EmissionSignal::emitted_mass(Molecule m) const {
  double total = 0.0;
  for (double q : samples[m])
    total += q;
  return total * dt();
}

EmissionSignal EmissionSignal::resized(std::size_t n) const {
  EmissionSignal out = *this;
  for (auto &s : out.samples)
    s.resize(n, 0.0);
  return out;
}

EmissionSignal build_emission_signal(const EmissionConfig &cfg) {
  cfg.validate();
  const std::size_t per_symbol = cfg.samples_per_symbol();
  EmissionSignal signal;
  signal.sample_rate_hz = cfg.sample_rate_hz;
  for (Molecule m : kAllMolecules) {
    auto &s = signal.samples[m];
    s.reserve(cfg.bits.size() * per_symbol);
    for (std::uint8_t bit : cfg.bits)
      s.insert(s.end(), per_symbol, bit ? cfg.amplitudes[m] : 0.0);
  }
  return signal;
}

BitSequence random_bits(std::size_t count, std::mt19937_64 &engine) {
  BitSequence bits(count);
  // Top bit of each 64-bit draw; independent of distribution implementations.
  for (auto &b : bits)
    b = static_cast<std::uint8_t>(engine() >> 63);
  return bits;
}

BitSequence parse_bit_string(std::string_view text) {
  BitSequence bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    else
      throw ConfigError(std::string("bit string may only contain 0/1, got '") +
                        c + "'");
  }
  return bits;
}

std::string format_bit_string(const BitSequence &bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits)
    out.push_back(b ? '1' : '0');
  return out;
}

CarbonBudget carbon_budget_amplitudes(const PerMolecule<double> &base,
                                      const PerMolecule<int> &carbons) {
  CarbonBudget result;
  for (Molecule m : kAllMolecules) {
    if (!(base[m] >= 0.0) || !std::isfinite(base[m]))
      throw ConfigError("carbon budget: amplitudes must be >= 0");
    if (carbons[m] <= 0)
      throw ConfigError("carbon budget: carbon counts must be > 0");
    result.budget += base[m] * carbons[m];
  }
  for (Molecule active : kAllMolecules) {
    PerMolecule<double> amps{};
    amps[active] = result.budget / carbons[active];
    result.scenarios[active] = amps;
  }
  return result;
}

} // namespace glvsim
