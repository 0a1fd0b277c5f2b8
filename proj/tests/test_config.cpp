#include "glvsim/config.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>

using namespace glvsim;

namespace {

bool mentions(const std::vector<std::string> &problems, const std::string &s) {
  return std::any_of(problems.begin(), problems.end(), [&](const auto &p) {
    return p.find(s) != std::string::npos;
  });
}

std::string error_of(const Json &doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError &e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("default config is valid") {
  const Json doc = default_config_document();
  CHECK(config_problems(doc).empty());
  const auto cfg = config_from_json(doc);
  CHECK(cfg.scenario == "point_to_point");
  CHECK(cfg.physics.seed == 1);
  CHECK(cfg.physics.alarm_threshold_um == doctest::Approx(1.409).epsilon(2e-4));
  CHECK(cfg.physics.amplitudes[Molecule::HOL] == 1.52e-11);
  CHECK(cfg.physics.channel.method == ChannelMethod::Hierarchical);
  CHECK(cfg.document == doc);
}

TEST_CASE("every scenario name is accepted") {
  Json doc = default_config_document();
  CHECK(scenario_names().size() == 7);
  for (const auto &name : scenario_names()) {
    doc["scenario"] = name;
    CHECK(config_problems(doc).empty());
  }
  doc["scenario"] = "fig9";
  CHECK(mentions(config_problems(doc), "scenario"));
}

TEST_CASE("strict parsing rejects duplicate keys") {
  CHECK_NOTHROW(parse_json_strict(R"({"a": 1, "b": {"c": 2}})"));
  try {
    parse_json_strict(R"({"a": 1, "b": {"c": 2, "c": 3}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("b.c") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_json_strict("{\"a\": 1,}"), ConfigError);
  CHECK_THROWS_AS(parse_json_strict("{\"a\": 1 // note\n}"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
  Json doc = default_config_document();
  doc["transmitter"]["symbol_period"] = 2.0;
  doc["colour"] = "green";
  const auto p = config_problems(doc);
  CHECK(mentions(p, "transmitter.symbol_period"));
  CHECK(mentions(p, "colour"));
}

TEST_CASE("all problems are reported at once") {
  Json doc = default_config_document();
  doc["seed"] = -3;
  doc["environment"]["temperature_k"] = "warm";
  doc["loss"]["HAL"]["mean"] = 0.5;
  doc["loss"]["HAL"]["cv"] = 2.0;
  doc["channel"]["method"] = "fft";
  doc.erase("alarm");
  const auto p = config_problems(doc);
  CHECK(p.size() >= 5);
  CHECK(mentions(p, "seed"));
  CHECK(mentions(p, "environment.temperature_k"));
  CHECK(mentions(p, "loss.HAL"));
  CHECK(mentions(p, "channel.method"));
  CHECK(mentions(p, "alarm"));
  const std::string all = error_of(doc);
  CHECK(all.find("seed") != std::string::npos);
  CHECK(all.find("loss.HAL") != std::string::npos);
}

TEST_CASE("Beta infeasibility is reported") {
  Json doc = default_config_document();
  doc["loss"]["HOL"]["mean"] = 0.5;
  doc["loss"]["HOL"]["cv"] = 2.0;
  const auto p = config_problems(doc);
  REQUIRE(p.size() == 1);
  CHECK(p[0].find("loss.HOL") != std::string::npos);
  CHECK(p[0].find("infeasible") != std::string::npos);
}

TEST_CASE("missing r_liq names the molecule") {
  for (const char *m : {"HAL", "HOL", "HAC"}) {
    Json doc = default_config_document();
    doc["molecules"][m].erase("r_liq");
    CAPTURE(m);
    CHECK(error_of(doc).find(std::string("molecules.") + m + ".r_liq") !=
          std::string::npos);
    doc["molecules"][m]["r_liq"] = nullptr;
    CHECK(error_of(doc).find(m) != std::string::npos);
  }
}

TEST_CASE("dotted overrides") {
  Json doc = default_config_document();
  apply_override(doc, "wind.regime=nondirected_weak");
  CHECK(doc["wind"]["regime"] == "nondirected_weak");
  apply_override(doc, "seed=17");
  CHECK(doc["seed"] == 17);
  apply_override(doc, "geometry.rx.0=0.3");
  CHECK(doc["geometry"]["rx"][0] == 0.3);
  apply_override(doc, "campaigns.alarm_map.nx=3");
  CHECK(doc["campaigns"]["alarm_map"]["nx"] == 3);
  const auto cfg = config_from_json(doc);
  CHECK(cfg.physics.wind_regime == "nondirected_weak");
  CHECK(cfg.physics.seed == 17);
  CHECK(cfg.physics.rx_position.x == 0.3);
  CHECK(cfg.campaigns.alarm_map.nx == 3);
  CHECK(cfg.document["wind"]["regime"] == "nondirected_weak");

  CHECK_THROWS_AS(apply_override(doc, "seed"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "geometry.rx.7=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "seed.x=1"), ConfigError);
}

TEST_CASE("custom wind") {
  Json doc = default_config_document();
  apply_override(doc, "wind.regime=custom");
  CHECK(mentions(config_problems(doc), "wind.mean_mps"));
  apply_override(doc, "wind.mean_mps=[0.1,-0.05]");
  apply_override(doc, "wind.std_mps=[0.2,0.3]");
  const auto cfg = config_from_json(doc);
  CHECK(cfg.physics.wind.mean_y == -0.05);
  CHECK(cfg.physics.wind.std_y == 0.3);
  doc["wind"]["std_mps"] = {0.2, -1.0};
  CHECK(mentions(config_problems(doc), "wind"));
  doc = default_config_document();
  doc["wind"]["mean_mps"] = {0.1, 0.0};
  CHECK(mentions(config_problems(doc), "wind.mean_mps"));
}

TEST_CASE("parameter provenance tags") {
  Json doc = default_config_document();
  auto rows = parameter_provenance(doc);
  REQUIRE_FALSE(rows.empty());
  std::size_t placeholders = 0;
  for (const auto &r : rows) {
    const bool rliq = r.path.find("r_liq") != std::string::npos;
    CHECK(r.tag == (rliq ? "placeholder" : "paper-table"));
    placeholders += rliq ? 1 : 0;
  }
  CHECK(placeholders == 3);

  apply_override(doc, "molecules.HAL.r_liq=2500");
  apply_override(doc, "enzymes.UGT85A53.abundance_ppm=26.4");
  rows = parameter_provenance(doc);
  for (const auto &r : rows) {
    if (r.path == "molecules.HAL.r_liq" || r.path == "enzymes.UGT85A53.abundance_ppm")
      CHECK(r.tag == "user");
    if (r.path == "molecules.HOL.r_liq")
      CHECK(r.tag == "placeholder");
  }
}

TEST_CASE("profiles") {
  Json doc = default_config_document();
  apply_profile(doc, Profile::Paper);
  auto cfg = config_from_json(doc);
  CHECK(cfg.campaigns.alarm_map.x_max - cfg.campaigns.alarm_map.x_min == 2.0);
  CHECK(cfg.campaigns.alarm_map.nx == 20);
  CHECK(cfg.campaigns.alarm_map.duration_s == 36000.0);
  apply_profile(doc, Profile::Desk);
  cfg = config_from_json(doc);
  CHECK(cfg.campaigns.alarm_map.nx == 4);
  CHECK(cfg.campaigns.alarm_map.snapshot_times_s.back() == 14400.0);
  CHECK(parse_profile("paper") == Profile::Paper);
  CHECK(to_string(Profile::Desk) == "desk");
  CHECK_THROWS_AS(parse_profile("gpu"), ConfigError);
}

TEST_CASE("campaign regimes and geometry are checked") {
  Json doc = default_config_document();
  doc["campaigns"]["distance_sweep"]["regimes"] = {"directed", "hurricane"};
  CHECK(mentions(config_problems(doc), "hurricane"));
  doc = default_config_document();
  doc["geometry"]["rx"] = {0.0, 0.0, 1.0};
  CHECK_FALSE(config_problems(doc).empty());
  doc = default_config_document();
  doc["campaigns"]["alarm_map"]["snapshot_times_s"] = {99999.0};
  CHECK(mentions(config_problems(doc), "alarm_map"));
}

TEST_CASE("reading a missing file is an io error") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/glvsim.json"), IoError);
}
