#include "glvsim/leaf_uptake.hpp"
#include "glvsim/params.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace glvsim;

namespace {

UptakeParams params() { return defaults::uptake_params(true); }

// Straight-line evaluation of the absorption balance for HAL with the
// tabulated constants, pressure in bar and the placeholder r_liq.
double hal_oracle(double c_air_ppb, double c_ct) {
  const double rbw = 2.58, rsw = 21.8, e = 6e-4, h = 6.0;
  const double da = 8.0718e-6, dw = 2.3289e-5;
  const double dl = 6.38e-5, tau = 1.57, fias = 0.328;
  const double rb = rbw * std::pow(dw / da, 2.0 / 3.0);
  const double rs = rsw * (dw / da);
  const double rg = rs + rb;
  const double rias = dl * tau / (da * fias);
  const double f = 273.15 / (298.15 * 22.4e-3);
  const double p_bar = 1.01325;
  const double rliq = 1e4;
  const double lhs = rias / f + 1.0 / (1.0 / rg + e / 2) + 1e3 * rliq / (h * p_bar);
  const double rhs = (1.0 / rg - e / 2) / (1.0 / rg + e / 2) * c_air_ppb -
                     1e3 / (h * p_bar) * c_ct;
  return rhs / lhs;
}

} // namespace

TEST_CASE("absorption sign structure") {
  const auto p = params();
  for (Molecule m : kAllMolecules) {
    CHECK(absorption_rate(m, 0.0, 0.0, p) == 0.0);
    CHECK(absorption_rate(m, 0.0, 1e-3, p) < 0.0);
    CHECK(absorption_rate(m, 1.0, 0.0, p) > 0.0);
  }
}

TEST_CASE("HAL absorption at 1 ppb") {
  const auto p = params();
  CHECK(absorption_rate(Molecule::HAL, 1.0, 0.0, p) ==
        doctest::Approx(hal_oracle(1.0, 0.0)).epsilon(1e-12));
  CHECK(absorption_rate(Molecule::HAL, 1.0, 0.0, p) ==
        doctest::Approx(5.835730731560016e-07).epsilon(1e-12));
  CHECK(absorption_rate(Molecule::HAL, 3.0, 2e-4, p) ==
        doctest::Approx(hal_oracle(3.0, 2e-4)).epsilon(1e-12));
}

TEST_CASE("absorption is affine and monotone") {
  const auto p = params();
  for (Molecule m : kAllMolecules) {
    const auto k = uptake_coefficients(m, p);
    CHECK(k.air_gain > 0.0);
    CHECK(k.cytosol_gain > 0.0);
    for (double ca : {0.0, 0.5, 20.0})
      for (double cc : {0.0, 1e-6, 1e-3}) {
        const double a = absorption_rate(m, ca, cc, p);
        CHECK(a == doctest::Approx(k.air_gain * ca - k.cytosol_gain * cc));
        CHECK(absorption_rate(m, ca + 1.0, cc, p) > a);
        CHECK(absorption_rate(m, ca, cc + 1e-4, p) < a);
      }
  }
}

TEST_CASE("equilibrium cytosolic concentration") {
  const auto p = params();
  for (Molecule m : kAllMolecules) {
    const auto k = uptake_coefficients(m, p);
    const double ca = 4.0;
    const double c_eq = k.air_gain / k.cytosol_gain * ca;
    CHECK(std::abs(absorption_rate(m, ca, c_eq, p)) <
          1e-12 * k.air_gain * ca);
  }
}

TEST_CASE("higher pressure shrinks the liquid-phase term and raises uptake") {
  auto p = params();
  const double a1 = absorption_rate(Molecule::HOL, 1.0, 0.0, p);
  p.env.pressure_atm = 2.0;
  CHECK(absorption_rate(Molecule::HOL, 1.0, 0.0, p) > a1);
}

TEST_CASE("conversion to cytosolic rate") {
  const auto p = params();
  CHECK(to_cytosolic_rate(0.0, p) == 0.0);
  CHECK(to_cytosolic_rate(1.0, p) == doctest::Approx(6.111e6).epsilon(1e-4));
  CHECK(to_cytosolic_rate(1.0, p) == doctest::Approx(0.0055 / 0.0009 * 1e6));
  CHECK(to_cytosolic_rate(-2.0, p) == doctest::Approx(-2.0 * 0.0055 / 0.0009 * 1e6));
  CHECK_THROWS_AS(to_cytosolic_rate(NAN, p), std::domain_error);
}

TEST_CASE("clamp switch forbids efflux") {
  auto p = params();
  p.clamp_nonnegative_absorption = true;
  CHECK(absorption_rate(Molecule::HAC, 0.0, 1e-3, p) == 0.0);
  CHECK(absorption_rate(Molecule::HAC, 1.0, 0.0, p) > 0.0);
}

TEST_CASE("missing r_liq names the molecule") {
  auto p = defaults::uptake_params(false);
  CHECK(std::isnan(p.molecules[Molecule::HAL].r_liq));
  p.molecules[Molecule::HAL].r_liq = 1e4;
  p.molecules[Molecule::HAC].r_liq = 1e4;
  try {
    p.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("HOL") != std::string::npos);
  }
  CHECK_NOTHROW(params().validate());
}

TEST_CASE("invalid anatomy and inputs") {
  auto p = params();
  p.leaf.f_ias = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = params();
  p.molecules[Molecule::HOL].henry = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(absorption_rate(Molecule::HAL, -1.0, 0.0, params()),
                  std::domain_error);
}
