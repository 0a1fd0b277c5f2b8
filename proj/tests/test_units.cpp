#include "glvsim/units.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace glvsim;

TEST_CASE("air concentration to ppb") {
  const Environment env;
  CHECK(mol_per_m3_to_ppb(0.0, env) == 0.0);
  // V_m = 8.2057e-5 * 298.15 = 0.024465 m^3/mol
  CHECK(mol_per_m3_to_ppb(1.0, env) == doctest::Approx(2.4465e7).epsilon(1e-4));
  CHECK(mol_per_m3_to_ppb(1e-12, env) ==
        doctest::Approx(2.4465e-5).epsilon(1e-4));
}

TEST_CASE("ppb conversion is exactly linear for powers of two") {
  const Environment env{310.0, 0.9};
  for (double c : {1e-12, 3.7e-9, 0.25, 12.0})
    for (double a : {0.0, 0.5, 2.0, 1024.0})
      CHECK(mol_per_m3_to_ppb(a * c, env) == a * mol_per_m3_to_ppb(c, env));
}

TEST_CASE("ppb conversion follows the ideal gas law") {
  const Environment hot{350.0, 1.0}, low{298.15, 0.5};
  const Environment ref;
  CHECK(mol_per_m3_to_ppb(1.0, hot) / mol_per_m3_to_ppb(1.0, ref) ==
        doctest::Approx(350.0 / 298.15));
  CHECK(mol_per_m3_to_ppb(1.0, low) / mol_per_m3_to_ppb(1.0, ref) ==
        doctest::Approx(2.0));
}

TEST_CASE("environment validation") {
  CHECK_NOTHROW(Environment{}.validate());
  CHECK_THROWS_AS((Environment{0.0, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((Environment{298.15, -1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((Environment{NAN, 1.0}.validate()), std::domain_error);
  CHECK(Environment{}.pressure_bar() == doctest::Approx(1.01325));
}

TEST_CASE("enzyme total concentration") {
  CHECK(enzyme_total_concentration(0.0) == 0.0);
  // 3e6 * 1e15 * 330e-6 = 9.9e17 molecules/L; / 6.02e23 = 1.64452e-6 mol/L.
  // The rounded figure 1.6440 agrees only to four significant digits.
  CHECK(enzyme_total_concentration(330.0) ==
        doctest::Approx(9.9e17 / 6.02e23 * 1e6).epsilon(1e-12));
  CHECK(enzyme_total_concentration(330.0) ==
        doctest::Approx(1.6440).epsilon(5e-4));
  CHECK(enzyme_total_concentration(0.09) ==
        doctest::Approx(4.485e-4).epsilon(1e-6));
}

TEST_CASE("enzyme total concentration is linear in abundance") {
  const double unit = enzyme_total_concentration(1.0);
  for (double a : {0.09, 1.0, 47.0, 330.0})
    CHECK(enzyme_total_concentration(a) == doctest::Approx(a * unit).epsilon(1e-14));
  CHECK(enzyme_total_concentration(10.0, 6e6) ==
        doctest::Approx(2.0 * enzyme_total_concentration(10.0)));
}

TEST_CASE("alarm threshold conversion") {
  CHECK(alarm_threshold_to_micromolar(0.0, 394.4, 0.0009) == 0.0);
  CHECK(alarm_threshold_to_micromolar(0.5, 394.4, 0.0009) ==
        doctest::Approx(1.409).epsilon(2e-4));
  CHECK(alarm_threshold_to_micromolar(2.39, 394.4, 0.0009) ==
        doctest::Approx(6.73).epsilon(5e-4));
}

TEST_CASE("alarm threshold round trip") {
  for (double x : {0.01, 0.5, 2.39, 100.0}) {
    const double um = alarm_threshold_to_micromolar(x, 394.4, 0.0009);
    CHECK(um * 394.4 * 0.0009 == doctest::Approx(x).epsilon(1e-12));
  }
}
