#include "glvsim/leaf_uptake.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace glvsim {

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

} // namespace

void UptakeParams::validate() const {
  env.validate();
  if (!positive(d_water))
    throw ConfigError("uptake: d_water must be > 0");
  if (!positive(leaf.delta_l_ias) || !positive(leaf.tortuosity) ||
      !positive(leaf.la_fw) || !positive(leaf.v_intra))
    throw ConfigError("uptake: leaf anatomy values must be > 0");
  if (!(leaf.f_ias > 0.0 && leaf.f_ias < 1.0))
    throw ConfigError("uptake: f_ias must lie in (0, 1)");
  for (Molecule m : kAllMolecules) {
    const auto &u = molecules[m];
    const std::string name(molecule_name(m));
    if (std::isnan(u.r_liq))
      throw ConfigError("uptake: r_liq is required for " + name +
                        " (no tabulated value exists; supply it in config)");
    if (!positive(u.r_liq))
      throw ConfigError("uptake: r_liq for " + name + " must be > 0");
    if (!positive(u.r_b_w) || !positive(u.r_s_w))
      throw ConfigError("uptake: resistances for " + name + " must be > 0");
    if (!positive(u.henry))
      throw ConfigError("uptake: Henry constant for " + name + " must be > 0");
    if (!positive(u.diffusivity))
      throw ConfigError("uptake: diffusivity for " + name + " must be > 0");
    if (!(u.transpiration >= 0.0) || !std::isfinite(u.transpiration))
      throw ConfigError("uptake: transpiration for " + name + " must be >= 0");
  }
}

UptakeCoefficients uptake_coefficients(Molecule m, const UptakeParams &p) {
  const MoleculeUptake &u = p.molecules[m];
  const double ratio = p.d_water / u.diffusivity;
  const double r_b = u.r_b_w * std::pow(ratio, 2.0 / 3.0);
  const double r_s = u.r_s_w * ratio;
  const double g = 1.0 / (r_s + r_b);
  const double r_ias =
      p.leaf.delta_l_ias * p.leaf.tortuosity / (u.diffusivity * p.leaf.f_ias);
  const double f = 273.15 / (p.env.temperature_kelvin * 22.4e-3);
  const double henry_term = 1e3 / (u.henry * p.env.pressure_bar());
  const double half_e = 0.5 * u.transpiration;

  const double denominator =
      r_ias / f + 1.0 / (g + half_e) + henry_term * u.r_liq;
  if (!(denominator > 0.0) || !std::isfinite(denominator))
    throw ConfigError("uptake: non-positive resistance sum for " +
                      std::string(molecule_name(m)));
  UptakeCoefficients c;
  c.air_gain = (g - half_e) / (g + half_e) / denominator;
  c.cytosol_gain = henry_term / denominator;
  if (!std::isfinite(c.air_gain) || !std::isfinite(c.cytosol_gain))
    throw ConfigError("uptake: non-finite coefficients for " +
                      std::string(molecule_name(m)));
  return c;
}

double absorption_rate(Molecule m, double c_air_ppb, double c_cytosol_mol_m3,
                       const UptakeParams &p) {
  if (!(c_air_ppb >= 0.0) || !(c_cytosol_mol_m3 >= 0.0))
    throw std::domain_error("absorption_rate: concentrations must be >= 0");
  const UptakeCoefficients c = uptake_coefficients(m, p);
  const double a = c.air_gain * c_air_ppb - c.cytosol_gain * c_cytosol_mol_m3;
  return p.clamp_nonnegative_absorption ? std::max(a, 0.0) : a;
}

double to_cytosolic_rate(double absorption, const UptakeParams &p) {
  if (!std::isfinite(absorption))
    throw std::domain_error("to_cytosolic_rate: non-finite absorption");
  return absorption * p.leaf.la_fw / p.leaf.v_intra * 1e6;
}

} // namespace glvsim
