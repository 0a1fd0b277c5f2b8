#pragma once

#include "glvsim/leaf_uptake.hpp"
#include "glvsim/receiver.hpp"
#include "glvsim/types.hpp"

namespace glvsim::defaults {

/// Emission amplitudes A_a, A_o, A_t in mol/s.
inline constexpr PerMolecule<double> kEmissionAmplitudes{
    {2.76e-11, 1.52e-11, 1.45e-11}};
inline constexpr PerMolecule<double> kDiffusivity{
    {8.0718e-6, 7.9291e-6, 6.7698e-6}};
inline constexpr double kWaterDiffusivity = 2.3289e-5;

inline constexpr double kSymbolPeriod = 2.0;
inline constexpr double kSampleRate = 10.0;
inline constexpr Vec3 kTxPosition{0.0, 0.0, 1.0};
inline constexpr Vec3 kRxPosition{0.15, 0.0, 1.0};
inline constexpr Vec3 kRxPositionGlvComparison{0.20, 0.0, 1.0};

inline constexpr double kLossMean = 0.85;
inline constexpr double kLossCv = 0.15;

inline constexpr double kAlarmThresholdUgPerG = 0.5;
inline constexpr double kHexVicMolarMass = 394.4;

/// Liquid-phase resistance used when no derived value is available
/// (m^2 s/mol). Not a tabulated value.
inline constexpr double kPlaceholderRLiq = 1.0e4;

/// Uptake parameters; r_liq is left unset (NaN) unless `with_placeholder`.
UptakeParams uptake_params(bool with_placeholder_r_liq = false);

/// Enzymes with e_total from the tabulated abundances.
EnzymeSet enzymes();

/// 0.5 ug/g FW HEXVic expressed in uM.
double alarm_threshold_um();

} // namespace glvsim::defaults
