#pragma once

#include "glvsim/types.hpp"
#include "glvsim/units.hpp"

#include <limits>

namespace glvsim {

/// Gas- and liquid-phase exchange parameters of one volatile.
struct MoleculeUptake {
  double r_b_w = 0.0;         // boundary-layer resistance for water vapor, m^2 s/mol
  double r_s_w = 0.0;         // stomatal resistance for water vapor, m^2 s/mol
  double transpiration = 0.0; // E, mol m^-2 s^-1
  double henry = 0.0;         // H, mol L^-1 atm^-1
  /// Composite liquid-phase resistance, m^2 s/mol. NaN means not supplied.
  double r_liq = std::numeric_limits<double>::quiet_NaN();
  double diffusivity = 0.0; // gas-phase D, m^2/s
  double molar_mass = 0.0;  // g/mol, informational
  double log10_kow = 0.0;   // octanol/water partition, informational
};

struct LeafAnatomy {
  double delta_l_ias = 6.38e-5; // m
  double tortuosity = 1.57;
  double f_ias = 0.328;
  double la_fw = 0.0055;    // m^2 / g FW
  double v_intra = 0.0009;  // L / g FW
};

struct UptakeParams {
  PerMolecule<MoleculeUptake> molecules;
  double d_water = 2.3289e-5; // m^2/s
  LeafAnatomy leaf;
  Environment env;
  /// Ablation switch: forbid efflux (negative absorption).
  bool clamp_nonnegative_absorption = false;

  /// Throws ConfigError; a missing r_liq names the molecule.
  void validate() const;
};

/// The absorption rate is affine: A = air_gain * C_a[ppb] - cytosol_gain *
/// C_ct[mol/m^3], in mol m^-2 s^-1.
struct UptakeCoefficients {
  double air_gain = 0.0;
  double cytosol_gain = 0.0;
};

UptakeCoefficients uptake_coefficients(Molecule m, const UptakeParams &p);

/// Leaf absorption rate (mol m^-2 s^-1) from the air concentration in ppb
/// and the cytosolic concentration in mol/m^3. Negative means efflux.
double absorption_rate(Molecule m, double c_air_ppb, double c_cytosol_mol_m3,
                       const UptakeParams &p);

/// mol m^-2 s^-1 to micromolar per second: A * LA_FW / V_intra * 1e6.
double to_cytosolic_rate(double absorption, const UptakeParams &p);

} // namespace glvsim
