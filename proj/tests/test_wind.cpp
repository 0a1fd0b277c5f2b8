#include "glvsim/wind.hpp"

#include <doctest.h>

#include <cmath>

using namespace glvsim;

TEST_CASE("degenerate noise gives constant directed wind") {
  WindModel m;
  m.mean_x = 0.2;
  const auto p = sample_wind_path(m, 100);
  REQUIRE(p.size() == 100);
  REQUIRE(p.displacement.size() >= 100);
  for (std::size_t n = 0; n < 100; ++n) {
    CHECK(p.velocities[n] == Vec3{0.2, 0.0, 0.0});
    CHECK(p.displacement[n].x == doctest::Approx(0.02 * n));
    CHECK(p.displacement[n].y == 0.0);
  }
}

TEST_CASE("sample mean and std of strong wind") {
  WindModel m;
  m.std_x = m.std_y = 0.5;
  m.seed = 11;
  const std::size_t n = 100000;
  const auto p = sample_wind_path(m, n);
  double sx = 0, sy = 0, sxx = 0, syy = 0;
  for (const auto &v : p.velocities) {
    sx += v.x;
    sy += v.y;
    sxx += v.x * v.x;
    syy += v.y * v.y;
    CHECK(v.z == 0.0);
  }
  const double bound = 3.0 * 0.5 / std::sqrt(double(n));
  CHECK(std::abs(sx / n) < bound);
  CHECK(std::abs(sy / n) < bound);
  CHECK(std::sqrt(sxx / n - (sx / n) * (sx / n)) ==
        doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::sqrt(syy / n - (sy / n) * (sy / n)) ==
        doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("identical seeds give bitwise identical paths") {
  auto m = *wind_regime("nondirected_strong");
  m.seed = 99;
  const auto a = sample_wind_path(m, 5000), b = sample_wind_path(m, 5000);
  CHECK(a.velocities == b.velocities);
  CHECK(a.displacement == b.displacement);
  m.seed = 100;
  CHECK(sample_wind_path(m, 5000).velocities != a.velocities);
}

TEST_CASE("displacement is the prefix sum of velocity times dt") {
  auto m = *wind_regime("nondirected_weak");
  m.seed = 5;
  const auto p = sample_wind_path(m, 1000);
  CHECK(p.displacement[0] == Vec3{});
  Vec3 w{};
  for (std::size_t n = 0; n + 1 < p.displacement.size() && n < p.size(); ++n) {
    w += p.velocities[n] * p.dt();
    CHECK(p.displacement[n + 1].x == doctest::Approx(w.x).epsilon(1e-12));
    CHECK(p.displacement[n + 1].y == doctest::Approx(w.y).epsilon(1e-12));
    CHECK(p.displacement[n + 1].z == 0.0);
  }
  const Vec3 mid = p.displacement_at(10, 0.05);
  CHECK(mid.x == doctest::Approx(p.displacement[10].x + p.velocities[10].x * 0.05));
}

TEST_CASE("named regimes") {
  const auto d = wind_regime("directed");
  REQUIRE(d);
  CHECK(d->mean_x == 0.2);
  CHECK(d->std_x == 0.01);
  const auto s = wind_regime("nondirected_strong");
  const auto w = wind_regime("nondirected_weak");
  REQUIRE(s);
  REQUIRE(w);
  CHECK(s->std_x > w->std_x);
  CHECK(s->mean_x == 0.0);
  CHECK_FALSE(wind_regime("gale"));
  CHECK(wind_regime_names().size() == 3);
}

TEST_CASE("wind validation") {
  WindModel m;
  m.std_x = -0.1;
  CHECK_THROWS(m.validate());
  m.std_x = 0.0;
  m.sample_rate_hz = 0.0;
  CHECK_THROWS(m.validate());
}

TEST_CASE("constant wind path") {
  const auto p = constant_wind_path({0.1, -0.2, 0.0}, 50, 10.0);
  CHECK(p.size() == 50);
  CHECK(p.displacement[49].y == doctest::Approx(-0.2 * 4.9));
}
