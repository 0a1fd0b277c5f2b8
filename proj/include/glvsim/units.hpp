#pragma once

// Physical constants and the handful of unit conversions the pipeline needs.
//
// Internal convention: channel quantities are SI (mol, m, s); cytosolic
// concentrations are micromolar and rates are micromolar per second.
// Conversions happen only at module boundaries.

namespace glvsim {

namespace constants {
/// Avogadro constant as tabulated with the enzyme abundances (mol^-1).
inline constexpr double kAvogadro = 6.02e23;
/// Ideal gas constant in m^3 atm mol^-1 K^-1 (8.314462618 J/mol/K / 101325 Pa).
inline constexpr double kGasConstantM3AtmPerMolK = 8.314462618 / 101325.0;
inline constexpr double kBarPerAtm = 1.01325;
/// Cellular protein density estimate, molecules per femtoliter.
inline constexpr double kProteinDensityPerFemtoliter = 3e6;
/// Micromolar to mol/m^3 (1 uM = 1e-6 mol/L = 1e-3 mol/m^3).
inline constexpr double kMolPerM3PerMicromolar = 1e-3;
} // namespace constants

struct Environment {
  double temperature_kelvin = 298.15;
  double pressure_atm = 1.0;

  /// Throws std::domain_error if either field is non-positive or non-finite.
  void validate() const;
  /// Ideal-gas molar volume R*T/P in m^3/mol.
  double molar_volume_m3() const;
  double pressure_bar() const { return pressure_atm * constants::kBarPerAtm; }
};

/// Air concentration (mol/m^3) to mole fraction in ppb: c * V_m * 1e9.
double mol_per_m3_to_ppb(double concentration, const Environment &env);

/// Total enzyme concentration from a PaxDb-style abundance (ppm).
///
/// Evaluates k_e * A_b * 1e15 / N_A. The ppm -> fraction factor and the
/// mol -> umol factor cancel, so the result is already in micromolar.
double enzyme_total_concentration(double abundance_ppm,
                                  double proteins_per_femtoliter =
                                      constants::kProteinDensityPerFemtoliter);

/// HEXVic alarm threshold from ug per g fresh weight to micromolar:
/// threshold / (mw * v_intra). No extra 1e-3 factor is applied; the
/// result for 0.5 ug/g FW is 1.409 uM.
double alarm_threshold_to_micromolar(double threshold_ug_per_g,
                                     double molecular_weight,
                                     double v_intra_l_per_g);

} // namespace glvsim
