#include "glvsim/loss.hpp"

#include <doctest.h>

#include <cmath>

using namespace glvsim;

namespace {
ConcentrationTrace ramp(std::size_t n) {
  ConcentrationTrace t;
  for (Molecule m : kAllMolecules)
    for (std::size_t i = 0; i < n; ++i)
      t.values[m].push_back(1e-9 * (1.0 + i % 17));
  return t;
}
} // namespace

TEST_CASE("moment matched Beta parameters") {
  const auto p = beta_params_from_mean_cv(0.85, 0.15);
  CHECK_FALSE(p.deterministic);
  CHECK(p.alpha == doctest::Approx(5.8167).epsilon(1e-4));
  CHECK(p.beta == doctest::Approx(1.0265).epsilon(1e-4));
  CHECK(p.alpha / (p.alpha + p.beta) == doctest::Approx(0.85));
}

TEST_CASE("Beta samples reproduce the requested moments") {
  BetaSampler draw(beta_params_from_mean_cv(0.85, 0.15));
  auto engine = SeedTree(1).engine("test");
  const int n = 1000000;
  double s = 0, ss = 0, lo = 1, hi = 0;
  for (int i = 0; i < n; ++i) {
    const double x = draw(engine);
    s += x;
    ss += x * x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double mean = s / n;
  const double cv = std::sqrt(ss / n - mean * mean) / mean;
  CHECK(mean == doctest::Approx(0.85).epsilon(0.005));
  CHECK(cv == doctest::Approx(0.15).epsilon(0.005));
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("zero variance is deterministic") {
  const auto p = beta_params_from_mean_cv(0.5, 0.0);
  CHECK(p.deterministic);
  BetaSampler draw(p);
  auto engine = SeedTree(1).engine("test");
  for (int i = 0; i < 10; ++i)
    CHECK(draw(engine) == 0.5);
}

TEST_CASE("infeasible moments are rejected") {
  CHECK_THROWS_AS(beta_params_from_mean_cv(0.5, 2.0), ConfigError);
  CHECK_THROWS_AS(beta_params_from_mean_cv(0.5, 1.0), ConfigError); // cv^2 == bound
  CHECK_THROWS_AS(beta_params_from_mean_cv(0.0, 0.1), ConfigError);
  CHECK_THROWS_AS(beta_params_from_mean_cv(1.2, 0.0), ConfigError);
  CHECK_THROWS_AS(beta_params_from_mean_cv(0.8, -0.1), ConfigError);
  CHECK_NOTHROW(beta_params_from_mean_cv(1.0, 0.0));
  LossModel m;
  m.cv[Molecule::HOL] = 2.0;
  try {
    m.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("HOL") != std::string::npos);
  }
  m.enabled = false;
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("identity and zero traces") {
  LossModel ident;
  ident.mean = {{1.0, 1.0, 1.0}};
  ident.cv = {{0.0, 0.0, 0.0}};
  const auto t = ramp(100);
  const auto out = apply_loss(t, ident, SeedTree(1));
  for (Molecule m : kAllMolecules)
    CHECK(out.values[m] == t.values[m]);

  ConcentrationTrace zero;
  for (Molecule m : kAllMolecules)
    zero.values[m].assign(50, 0.0);
  const auto z = apply_loss(zero, LossModel{}, SeedTree(1));
  for (Molecule m : kAllMolecules)
    for (double v : z.values[m])
      CHECK(v == 0.0);

  LossModel off;
  off.enabled = false;
  CHECK(apply_loss(t, off, SeedTree(1)).values[Molecule::HAL] ==
        t.values[Molecule::HAL]);
}

TEST_CASE("long-run loss factor mean") {
  const auto t = ramp(100000);
  const auto out = apply_loss(t, LossModel{}, SeedTree(5));
  for (Molecule m : kAllMolecules) {
    double s = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(out.values[m][i] <= t.values[m][i]);
      s += out.values[m][i] / t.values[m][i];
    }
    CHECK(s / t.size() == doctest::Approx(0.85).epsilon(0.005));
  }
}

TEST_CASE("loss streams are independent and reproducible") {
  const auto t = ramp(200);
  const SeedTree seeds(9);
  const auto a = apply_loss(t, LossModel{}, seeds, "/rx0");
  const auto b = apply_loss(t, LossModel{}, seeds, "/rx0");
  const auto c = apply_loss(t, LossModel{}, seeds, "/rx1");
  for (Molecule m : kAllMolecules) {
    CHECK(a.values[m] == b.values[m]);
    CHECK(a.values[m] != c.values[m]);
  }
  CHECK(a.values[Molecule::HAL] != a.values[Molecule::HOL]);
  CHECK(loss_stream_name(Molecule::HAC) == "loss:HAC");

  // Disabling HAL's variance must not perturb the HOL factors.
  LossModel partial;
  partial.cv[Molecule::HAL] = 0.0;
  const auto d = apply_loss(t, partial, seeds, "/rx0");
  CHECK(d.values[Molecule::HOL] == a.values[Molecule::HOL]);
}
