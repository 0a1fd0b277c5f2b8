#include "glvsim/receiver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace glvsim {

void EnzymeParams::validate() const {
  if (!(k_cat > 0.0) || !(k_m > 0.0) || !std::isfinite(k_cat) ||
      !std::isfinite(k_m))
    throw ConfigError("enzyme " + name + ": k_cat and k_m must be > 0");
  if (!(e_total >= 0.0) || !std::isfinite(e_total))
    throw ConfigError("enzyme " + name + ": e_total must be >= 0");
}

void EnzymeSet::validate() const {
  chr.validate();
  cxe.validate();
  ugt85a.validate();
  ugt91r.validate();
}

double mm_rate(double c, const EnzymeParams &e) {
  if (!(c >= 0.0))
    throw std::domain_error("mm_rate: negative concentration for " + e.name);
  return e.k_cat * e.e_total * c / (e.k_m + c);
}

namespace {

using Vec5 = std::array<double, 5>;

Vec5 to_array(const ReceiverState &s) {
  return {s.c_a, s.c_t, s.c_o, s.c_g, s.c_v};
}

ReceiverState from_array(const Vec5 &v) {
  return {v[0], v[1], v[2], v[3], v[4]};
}

// Precomputed affine uptake per molecule, already in uM/s.
struct Uptake {
  PerMolecule<double> air_gain;     // per ppb
  PerMolecule<double> cytosol_gain; // per uM
  bool clamp = false;

  PerMolecule<double> rates(const PerMolecule<double> &ppb,
                            const PerMolecule<double> &cytosol_um) const {
    PerMolecule<double> out;
    for (Molecule m : kAllMolecules) {
      const double a = air_gain[m] * ppb[m] - cytosol_gain[m] * cytosol_um[m];
      out[m] = clamp ? std::max(a, 0.0) : a;
    }
    return out;
  }
};

struct Kinetics {
  const EnzymeSet &e;

  // Derivative of (c_a, c_t, c_o, c_g, c_v) given absorption rates.
  Vec5 derivative(const Vec5 &s, const PerMolecule<double> &absorb) const {
    const double j_ao = mm_rate(std::max(s[0], 0.0), e.chr);
    const double j_to = mm_rate(std::max(s[1], 0.0), e.cxe);
    const double j_og = mm_rate(std::max(s[2], 0.0), e.ugt85a);
    const double j_gv = mm_rate(std::max(s[3], 0.0), e.ugt91r);
    return {absorb[Molecule::HAL] - j_ao, absorb[Molecule::HAC] - j_to,
            absorb[Molecule::HOL] + j_ao + j_to - j_og, j_og - j_gv, j_gv};
  }
};

PerMolecule<double> cytosol_of(const Vec5 &s) {
  PerMolecule<double> c;
  c[Molecule::HAL] = std::max(s[0], 0.0);
  c[Molecule::HAC] = std::max(s[1], 0.0);
  c[Molecule::HOL] = std::max(s[2], 0.0);
  return c;
}

double absorption_sum(const PerMolecule<double> &a) {
  return a[Molecule::HAL] + a[Molecule::HAC] + a[Molecule::HOL];
}

} // namespace

ReceiverTrajectory integrate_receiver(const ConcentrationTrace &air,
                                      const EnzymeSet &enzymes,
                                      const UptakeParams &uptake,
                                      const ReceiverState &initial,
                                      const ReceiverOptions &options) {
  enzymes.validate();
  uptake.validate();
  if (!(air.sample_rate_hz > 0.0))
    throw ConfigError("receiver: sample_rate_hz must be > 0");
  if (options.substeps < 1)
    throw ConfigError("receiver: substeps must be >= 1");
  const Vec5 init = to_array(initial);
  for (double v : init)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ConfigError("receiver: initial state must be finite and >= 0");

  const std::size_t n_samples = air.size();
  for (Molecule m : kAllMolecules)
    if (air.values[m].size() != n_samples)
      throw ConfigError("receiver: per-molecule traces differ in length");

  Uptake up;
  up.clamp = uptake.clamp_nonnegative_absorption;
  const double to_um_per_s = to_cytosolic_rate(1.0, uptake);
  for (Molecule m : kAllMolecules) {
    const UptakeCoefficients c = uptake_coefficients(m, uptake);
    up.air_gain[m] = c.air_gain * to_um_per_s;
    up.cytosol_gain[m] =
        c.cytosol_gain * constants::kMolPerM3PerMicromolar * to_um_per_s;
  }
  const Kinetics kin{enzymes};

  ReceiverTrajectory out;
  out.dt = 1.0 / air.sample_rate_hz;
  const double h = out.dt / static_cast<double>(options.substeps);
  if (options.store_states) {
    out.states.reserve(n_samples + 1);
    for (auto &a : out.absorption)
      a.reserve(n_samples + 1);
  }

  Vec5 s = init;
  auto observe = [&](std::size_t n, const PerMolecule<double> &ppb) {
    const ReceiverState st = from_array(s);
    if (options.store_states) {
      out.states.push_back(st);
      const PerMolecule<double> a = up.rates(ppb, cytosol_of(s));
      for (Molecule m : kAllMolecules)
        out.absorption[m].push_back(a[m]);
    }
    const double r = linearity_ratio(st, enzymes);
    if (r > kLinearityRatioLimit) {
      ++out.nonlinear_samples;
      if (!out.nonlinear_index)
        out.nonlinear_index = n;
    }
    if (options.alarm_threshold_um && !out.alarm_index &&
        st.c_v >= *options.alarm_threshold_um)
      out.alarm_index = n;
    ++out.samples;
  };

  PerMolecule<double> ppb{};
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (Molecule m : kAllMolecules)
      ppb[m] = mol_per_m3_to_ppb(air.values[m][n], uptake.env);
    observe(n, ppb);

    for (std::size_t sub = 0; sub < options.substeps; ++sub) {
      const PerMolecule<double> frozen = up.rates(ppb, cytosol_of(s));
      auto absorb = [&](const Vec5 &x) {
        return options.per_sample_absorption ? frozen
                                             : up.rates(ppb, cytosol_of(x));
      };
      Vec5 k[4];
      double absorbed = 0.0;
      const double weights[4] = {1.0, 2.0, 2.0, 1.0};
      Vec5 stage = s;
      for (int i = 0; i < 4; ++i) {
        if (i > 0) {
          const double f = i == 3 ? h : 0.5 * h;
          for (int j = 0; j < 5; ++j)
            stage[j] = s[j] + f * k[i - 1][j];
        }
        const PerMolecule<double> a = absorb(stage);
        k[i] = kin.derivative(stage, a);
        absorbed += weights[i] * absorption_sum(a);
      }
      absorbed *= h / 6.0;

      Vec5 next;
      double delta = 0.0;
      double activity = std::abs(absorbed);
      bool clamped = false;
      for (int j = 0; j < 5; ++j) {
        next[j] = s[j] + h / 6.0 * (k[0][j] + 2.0 * k[1][j] + 2.0 * k[2][j] +
                                    k[3][j]);
        if (!std::isfinite(next[j]))
          throw NumericError("receiver: non-finite state at t = " +
                             std::to_string(static_cast<double>(n) * out.dt +
                                            static_cast<double>(sub) * h) +
                             " s");
        delta += next[j] - s[j];
        activity += std::abs(next[j] - s[j]);
        if (next[j] < 0.0) {
          next[j] = 0.0;
          clamped = true;
          ++out.clamp_events;
        }
      }
      if (!clamped && activity > 0.0)
        out.max_mass_balance_residual = std::max(
            out.max_mass_balance_residual, std::abs(delta - absorbed) / activity);
      s = next;
      ++out.steps;
    }
  }
  observe(n_samples, ppb);
  out.final_state = from_array(s);
  return out;
}

double linearity_ratio(const ReceiverState &s, const EnzymeSet &e) {
  return std::max({s.c_a / e.chr.k_m, s.c_t / e.cxe.k_m, s.c_o / e.ugt85a.k_m,
                   s.c_g / e.ugt91r.k_m});
}

double linearity_fraction(const std::vector<ReceiverState> &states,
                          const EnzymeSet &e) {
  if (states.empty())
    throw std::invalid_argument("linearity_fraction: empty trajectory");
  std::size_t above = 0;
  for (const auto &s : states)
    if (linearity_ratio(s, e) > kLinearityRatioLimit)
      ++above;
  return static_cast<double>(above) / static_cast<double>(states.size());
}

std::optional<double> alarm_time(const std::vector<ReceiverState> &states,
                                 double dt, double threshold_um) {
  for (std::size_t n = 0; n < states.size(); ++n)
    if (states[n].c_v >= threshold_um)
      return static_cast<double>(n) * dt;
  return std::nullopt;
}

std::optional<double> linearity_time(const std::vector<ReceiverState> &states,
                                     double dt, const EnzymeSet &e) {
  for (std::size_t n = 0; n < states.size(); ++n)
    if (linearity_ratio(states[n], e) > kLinearityRatioLimit)
      return static_cast<double>(n) * dt;
  return std::nullopt;
}

} // namespace glvsim
