#include "glvsim/params.hpp"

#include "glvsim/units.hpp"

namespace glvsim::defaults {

UptakeParams uptake_params(bool with_placeholder_r_liq) {
  UptakeParams p;
  auto &hal = p.molecules[Molecule::HAL];
  hal.r_b_w = 2.58;
  hal.r_s_w = 21.8;
  hal.transpiration = 6e-4;
  hal.henry = 6.0;
  hal.molar_mass = 98.143;
  hal.log10_kow = 1.542;
  auto &hol = p.molecules[Molecule::HOL];
  hol.r_b_w = 3.23;
  hol.r_s_w = 26.5;
  hol.transpiration = 5.4e-4;
  hol.henry = 113.0;
  hol.molar_mass = 100.159;
  hol.log10_kow = 1.335;
  auto &hac = p.molecules[Molecule::HAC];
  hac.r_b_w = 2.47;
  hac.r_s_w = 16.1;
  hac.transpiration = 4.5e-4;
  hac.henry = 3.1;
  hac.molar_mass = 142.2;
  hac.log10_kow = 1.906;
  for (Molecule m : kAllMolecules) {
    p.molecules[m].diffusivity = kDiffusivity[m];
    if (with_placeholder_r_liq)
      p.molecules[m].r_liq = kPlaceholderRLiq;
  }
  p.d_water = kWaterDiffusivity;
  return p;
}

EnzymeSet enzymes() {
  auto make = [](const char *name, double k_cat, double k_m, double ppm) {
    EnzymeParams e;
    e.name = name;
    e.k_cat = k_cat;
    e.k_m = k_m;
    e.abundance_ppm = ppm;
    e.e_total = enzyme_total_concentration(ppm);
    return e;
  };
  return {make("CHR", 13.27, 32.7, 330.0), make("CXE", 3.78, 5940.0, 122.0),
          make("85A", 0.35, 18.92, 13.2), make("91R", 0.33, 5.9, 0.09)};
}

double alarm_threshold_um() {
  return alarm_threshold_to_micromolar(kAlarmThresholdUgPerG, kHexVicMolarMass,
                                       LeafAnatomy{}.v_intra);
}

} // namespace glvsim::defaults
