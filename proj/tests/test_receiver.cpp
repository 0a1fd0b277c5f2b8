#include "glvsim/params.hpp"
#include "glvsim/receiver.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace glvsim;

namespace {

UptakeParams uptake() { return defaults::uptake_params(true); }

ConcentrationTrace constant_air(std::size_t n, double hal, double hol,
                                double hac) {
  ConcentrationTrace t;
  t.values[Molecule::HAL].assign(n, hal);
  t.values[Molecule::HOL].assign(n, hol);
  t.values[Molecule::HAC].assign(n, hac);
  return t;
}

// Pulsed input: on for 20 samples of every 40.
ConcentrationTrace pulsed_air(std::size_t n, double level) {
  auto t = constant_air(n, 0, 0, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (i % 40 < 20)
      for (Molecule m : kAllMolecules)
        t.values[m][i] = level * (1.0 + index(m));
  return t;
}

} // namespace

TEST_CASE("Michaelis-Menten rate") {
  const auto e = defaults::enzymes();
  CHECK(mm_rate(0.0, e.chr) == 0.0);
  CHECK(mm_rate(e.ugt85a.k_m, e.ugt85a) ==
        doctest::Approx(0.5 * e.ugt85a.k_cat * e.ugt85a.e_total));
  EnzymeParams chr = e.chr;
  chr.e_total = 1.6440;
  CHECK(mm_rate(32.7, chr) == doctest::Approx(10.91).epsilon(1e-3));
  CHECK_THROWS_AS(mm_rate(-1.0, chr), std::domain_error);
}

TEST_CASE("enzyme validation") {
  auto e = defaults::enzymes();
  CHECK_NOTHROW(e.validate());
  e.cxe.k_m = 0.0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
  e = defaults::enzymes();
  e.ugt91r.e_total = -1.0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
}

TEST_CASE("zero input keeps the receiver at rest") {
  const auto t = integrate_receiver(constant_air(500, 0, 0, 0),
                                    defaults::enzymes(), uptake());
  REQUIRE(t.states.size() == 501);
  for (const auto &s : t.states)
    CHECK(s.total() == 0.0);
  CHECK(t.clamp_events == 0);
  CHECK_FALSE(t.nonlinear_index);
}

TEST_CASE("discrete mass balance") {
  const auto p = integrate_receiver(pulsed_air(3000, 2e-6),
                                    defaults::enzymes(), uptake());
  CHECK(p.clamp_events == 0);
  CHECK(p.max_mass_balance_residual <= 1e-6);
  CHECK(p.final_state.total() > 0.0);

  // With a steady input the stored rates are smooth, so their trapezoid
  // integral approximates the accumulated states (the start-up transient
  // limits the agreement).
  ReceiverOptions o;
  o.substeps = 4;
  const auto t = integrate_receiver(constant_air(3000, 1e-8, 2e-8, 3e-8),
                                    defaults::enzymes(), uptake(), {}, o);
  CHECK(t.max_mass_balance_residual <= 1e-6);
  double absorbed = 0.0;
  for (std::size_t n = 0; n + 1 < t.states.size(); ++n)
    for (Molecule m : kAllMolecules)
      absorbed += 0.5 * (t.absorption[m][n] + t.absorption[m][n + 1]) * t.dt;
  CHECK(t.final_state.total() == doctest::Approx(absorbed).epsilon(1e-3));
}

TEST_CASE("states stay non-negative and HEXVic accumulates") {
  const auto t = integrate_receiver(pulsed_air(4000, 5e-6),
                                    defaults::enzymes(), uptake());
  for (std::size_t n = 0; n < t.states.size(); ++n) {
    const auto &s = t.states[n];
    CHECK(s.c_a >= 0.0);
    CHECK(s.c_t >= 0.0);
    CHECK(s.c_o >= 0.0);
    CHECK(s.c_g >= 0.0);
    CHECK(s.c_v >= 0.0);
    if (n)
      CHECK(s.c_v >= t.states[n - 1].c_v);
  }
}

TEST_CASE("step halving converges") {
  const auto air = pulsed_air(6000, 1e-8);
  ReceiverOptions o;
  o.store_states = false;
  auto final_cv = [&](std::size_t substeps) {
    o.substeps = substeps;
    return integrate_receiver(air, defaults::enzymes(), uptake(), {}, o)
        .final_state.c_v;
  };
  const double c1 = final_cv(1), c2 = final_cv(2);
  CHECK(std::abs(c1 - c2) / c2 < 1e-6);
}

TEST_CASE("fourth-order accuracy") {
  const auto air = pulsed_air(6000, 1e-8);
  ReceiverOptions o;
  o.store_states = false;
  auto final_cv = [&](std::size_t substeps) {
    o.substeps = substeps;
    return integrate_receiver(air, defaults::enzymes(), uptake(), {}, o)
        .final_state.c_v;
  };
  const double a = final_cv(2), b = final_cv(4), c = final_cv(8);
  CHECK(std::log2(std::abs(a - b) / std::abs(b - c)) >= 3.5);
}

TEST_CASE("per-sample absorption is a close approximation") {
  const auto air = pulsed_air(3000, 2e-6);
  ReceiverOptions o;
  const auto a = integrate_receiver(air, defaults::enzymes(), uptake(), {}, o);
  o.per_sample_absorption = true;
  const auto b = integrate_receiver(air, defaults::enzymes(), uptake(), {}, o);
  CHECK(b.final_state.c_v == doctest::Approx(a.final_state.c_v).epsilon(1e-2));
}

TEST_CASE("superposition holds in the linear regime") {
  const std::size_t n = 2000;
  auto a = pulsed_air(n, 1e-9);
  auto b = constant_air(n, 0, 0, 0);
  for (std::size_t i = 300; i < 900; ++i)
    b.values[Molecule::HOL][i] = 3e-9;
  auto ab = a;
  for (Molecule m : kAllMolecules)
    for (std::size_t i = 0; i < n; ++i)
      ab.values[m][i] += b.values[m][i];
  const auto e = defaults::enzymes();
  const auto ra = integrate_receiver(a, e, uptake());
  const auto rb = integrate_receiver(b, e, uptake());
  const auto rab = integrate_receiver(ab, e, uptake());
  CHECK(rab.final_state.c_v ==
        doctest::Approx(ra.final_state.c_v + rb.final_state.c_v).epsilon(1e-3));
  CHECK(rab.final_state.c_o ==
        doctest::Approx(ra.final_state.c_o + rb.final_state.c_o).epsilon(1e-3));
}

TEST_CASE("linearity ratio") {
  const auto e = defaults::enzymes();
  CHECK(linearity_ratio({}, e) == 0.0);
  ReceiverState s;
  s.c_o = e.ugt85a.k_m;
  CHECK(linearity_ratio(s, e) == doctest::Approx(1.0));
  s = {};
  s.c_a = 3.27;
  CHECK(linearity_ratio(s, e) == doctest::Approx(0.1));
  s.c_g = e.ugt91r.k_m * 0.5;
  CHECK(linearity_ratio(s, e) == doctest::Approx(0.5));
}

TEST_CASE("nonlinear fraction boundary") {
  const auto e = defaults::enzymes();
  std::vector<ReceiverState> states(100);
  CHECK(linearity_fraction(states, e) == 0.0);
  CHECK(is_linear(linearity_fraction(states, e)));
  ReceiverState hot;
  hot.c_g = e.ugt91r.k_m;
  states[10] = states[50] = hot;
  CHECK(linearity_fraction(states, e) == doctest::Approx(0.02));
  CHECK(is_linear(linearity_fraction(states, e)));
  states[70] = hot;
  CHECK_FALSE(is_linear(linearity_fraction(states, e)));
  CHECK_THROWS(linearity_fraction({}, e));
}

TEST_CASE("alarm and linearity times") {
  const auto e = defaults::enzymes();
  std::vector<ReceiverState> states(10);
  CHECK_FALSE(alarm_time(states, 0.1, 1.409));
  CHECK(alarm_time(states, 0.1, 0.0) == 0.0);
  states[7].c_v = 1.409;
  states[8].c_v = 2.0;
  CHECK(*alarm_time(states, 0.1, 1.409) == doctest::Approx(0.7));
  CHECK_FALSE(linearity_time(states, 0.1, e));
  states[4].c_o = e.ugt85a.k_m;
  CHECK(*linearity_time(states, 0.1, e) == doctest::Approx(0.4));
}

TEST_CASE("tracked alarm index matches the stored trajectory") {
  ReceiverOptions o;
  o.alarm_threshold_um = 1e-4;
  const auto t = integrate_receiver(pulsed_air(6000, 5e-6), defaults::enzymes(),
                                    uptake(), {}, o);
  REQUIRE(t.alarm_index);
  CHECK(t.time_of(*t.alarm_index) ==
        doctest::Approx(*alarm_time(t.states, t.dt, 1e-4)));
  CHECK(t.samples == t.states.size());
  CHECK(double(t.nonlinear_samples) / t.samples ==
        doctest::Approx(linearity_fraction(t.states, defaults::enzymes())));
}

TEST_CASE("receiver input validation") {
  auto air = constant_air(10, 0, 0, 0);
  air.values[Molecule::HAC].resize(5);
  CHECK_THROWS_AS(integrate_receiver(air, defaults::enzymes(), uptake()),
                  ConfigError);
  ReceiverOptions o;
  o.substeps = 0;
  CHECK_THROWS_AS(integrate_receiver(constant_air(10, 0, 0, 0),
                                     defaults::enzymes(), uptake(), {}, o),
                  ConfigError);
  ReceiverState bad;
  bad.c_o = -1.0;
  CHECK_THROWS_AS(integrate_receiver(constant_air(10, 0, 0, 0),
                                     defaults::enzymes(), uptake(), bad),
                  ConfigError);
}
