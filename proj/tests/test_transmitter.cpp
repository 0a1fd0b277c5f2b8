#include "glvsim/params.hpp"
#include "glvsim/rng.hpp"
#include "glvsim/transmitter.hpp"

#include <doctest.h>

#include <algorithm>

using namespace glvsim;

namespace {
EmissionConfig config(BitSequence bits) {
  EmissionConfig c;
  c.bits = std::move(bits);
  c.amplitudes = defaults::kEmissionAmplitudes;
  return c;
}
} // namespace

TEST_CASE("single bit gives one pulse of 20 samples") {
  const auto s = build_emission_signal(config({1}));
  REQUIRE(s.size() == 20);
  for (double q : s.samples[Molecule::HAL])
    CHECK(q == 2.76e-11);
  for (double q : s.samples[Molecule::HAC])
    CHECK(q == 1.45e-11);
}

TEST_CASE("zero bits give a silent signal") {
  const auto s = build_emission_signal(config({0, 0, 0}));
  REQUIRE(s.size() == 60);
  for (Molecule m : kAllMolecules)
    CHECK(std::all_of(s.samples[m].begin(), s.samples[m].end(),
                      [](double q) { return q == 0.0; }));
}

TEST_CASE("pulse train blocks follow the bits") {
  const auto s = build_emission_signal(config({1, 0, 1}));
  const auto &q = s.samples[Molecule::HOL];
  REQUIRE(q.size() == 60);
  for (std::size_t n = 0; n < 60; ++n)
    CHECK(q[n] == (n >= 20 && n < 40 ? 0.0 : 1.52e-11));
}

TEST_CASE("emitted mass bookkeeping") {
  auto engine = SeedTree(7).engine("bits");
  const auto bits = random_bits(500, engine);
  const auto s = build_emission_signal(config(bits));
  const auto ones = std::count(bits.begin(), bits.end(), 1);
  for (Molecule m : kAllMolecules)
    CHECK(s.emitted_mass(m) ==
          doctest::Approx(ones * defaults::kEmissionAmplitudes[m] * 2.0)
              .epsilon(1e-12));
}

TEST_CASE("appending zero bits only extends the signal") {
  const auto a = build_emission_signal(config({1, 1, 0, 1}));
  const auto b = build_emission_signal(config({1, 1, 0, 1, 0, 0}));
  REQUIRE(b.size() == a.size() + 40);
  for (Molecule m : kAllMolecules) {
    CHECK(std::equal(a.samples[m].begin(), a.samples[m].end(),
                     b.samples[m].begin()));
    CHECK(b.emitted_mass(m) == a.emitted_mass(m));
  }
  const auto r = a.resized(b.size());
  CHECK(r.samples[Molecule::HAL] == b.samples[Molecule::HAL]);
}

TEST_CASE("symbol period must be a whole number of samples") {
  auto c = config({1});
  c.symbol_period_s = 0.25; // 2.5 samples
  CHECK_THROWS_AS(build_emission_signal(c), ConfigError);
  c.symbol_period_s = 0.0;
  CHECK_THROWS_AS(build_emission_signal(c), ConfigError);
  c = config({1});
  c.amplitudes[Molecule::HAL] = -1e-12;
  CHECK_THROWS_AS(build_emission_signal(c), ConfigError);
}

TEST_CASE("random bits are equiprobable and seeded") {
  auto e1 = SeedTree(3).engine("bits");
  auto e2 = SeedTree(3).engine("bits");
  const auto a = random_bits(20000, e1);
  CHECK(a == random_bits(20000, e2));
  const double ones = std::count(a.begin(), a.end(), 1);
  CHECK(ones / 20000.0 == doctest::Approx(0.5).epsilon(0.03));
  CHECK(std::all_of(a.begin(), a.end(), [](auto b) { return b <= 1; }));
}

TEST_CASE("bit strings") {
  CHECK(parse_bit_string("1011") == BitSequence{1, 0, 1, 1});
  CHECK(format_bit_string({0, 1, 1}) == "011");
  CHECK_THROWS_AS(parse_bit_string("10a"), ConfigError);
}

TEST_CASE("carbon budget comparison amplitudes") {
  const auto cb = carbon_budget_amplitudes(defaults::kEmissionAmplitudes);
  CHECK(cb.budget == doctest::Approx(3.728e-10).epsilon(1e-12));
  const auto &hol = cb.scenarios[Molecule::HOL];
  CHECK(hol[Molecule::HOL] == doctest::Approx(6.21e-11).epsilon(1e-3));
  CHECK(hol[Molecule::HAL] == 0.0);
  CHECK(hol[Molecule::HAC] == 0.0);
  CHECK(cb.scenarios[Molecule::HAL][Molecule::HAL] ==
        doctest::Approx(6.21e-11).epsilon(1e-3));
  CHECK(cb.scenarios[Molecule::HAC][Molecule::HAC] ==
        doctest::Approx(4.66e-11).epsilon(1e-3));
  for (Molecule m : kAllMolecules)
    CHECK(cb.scenarios[m][m] * kCarbonCounts[m] ==
          doctest::Approx(cb.budget).epsilon(1e-14));
}

TEST_CASE("carbon budget edge cases") {
  const auto zero = carbon_budget_amplitudes({});
  CHECK(zero.budget == 0.0);
  for (Molecule m : kAllMolecules)
    CHECK(zero.scenarios[m][m] == 0.0);
  CHECK_THROWS_AS(carbon_budget_amplitudes({{-1e-12, 0.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(carbon_budget_amplitudes(defaults::kEmissionAmplitudes,
                                           PerMolecule<int>{{6, 0, 8}}),
                  ConfigError);
}
