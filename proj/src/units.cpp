#include "glvsim/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glvsim {

void Environment::validate() const {
  if (!(temperature_kelvin > 0.0) || !std::isfinite(temperature_kelvin))
    throw std::domain_error("environment: temperature_kelvin must be > 0");
  if (!(pressure_atm > 0.0) || !std::isfinite(pressure_atm))
    throw std::domain_error("environment: pressure_atm must be > 0");
}

double Environment::molar_volume_m3() const {
  return constants::kGasConstantM3AtmPerMolK * temperature_kelvin /
         pressure_atm;
}

double mol_per_m3_to_ppb(double concentration, const Environment &env) {
  if (concentration < 0.0 || std::isnan(concentration))
    throw std::domain_error("mol_per_m3_to_ppb: negative concentration " +
                            std::to_string(concentration));
  return concentration * env.molar_volume_m3() * 1e9;
}

double enzyme_total_concentration(double abundance_ppm,
                                  double proteins_per_femtoliter) {
  if (abundance_ppm < 0.0 || std::isnan(abundance_ppm))
    throw std::domain_error("enzyme_total_concentration: negative abundance");
  if (!(proteins_per_femtoliter > 0.0))
    throw std::domain_error("enzyme_total_concentration: k_e must be > 0");
  return proteins_per_femtoliter * abundance_ppm * 1e15 /
         constants::kAvogadro;
}

double alarm_threshold_to_micromolar(double threshold_ug_per_g,
                                     double molecular_weight,
                                     double v_intra_l_per_g) {
  if (threshold_ug_per_g < 0.0 || std::isnan(threshold_ug_per_g))
    throw std::domain_error("alarm threshold must be >= 0");
  if (!(molecular_weight > 0.0))
    throw std::domain_error("alarm threshold: molecular weight must be > 0");
  if (!(v_intra_l_per_g > 0.0))
    throw std::domain_error("alarm threshold: V_intra must be > 0");
  return threshold_ug_per_g / (molecular_weight * v_intra_l_per_g);
}

} // namespace glvsim
