#include "glvsim/config.hpp"

#include "glvsim/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace glvsim {

namespace {

/// Channel and receiver settings used when a config omits those blocks.
ChannelConfig default_channel() {
  ChannelConfig c;
  c.method = ChannelMethod::Hierarchical;
  c.quadrature = EmissionQuadrature::Segment;
  c.quadrature_resolution = 0.1;
  c.aggregation_tolerance = 0.2;
  c.truncation_ratio = 1e-18;
  c.coarse_ratio = 1e-7;
  c.max_subdivisions = 64;
  return c;
}

ReceiverOptions default_receiver() {
  ReceiverOptions o;
  o.substeps = 8;
  return o;
}

const char *const kEnzymeKeys[] = {"CHR", "CXE", "UGT85A53", "UGT91R1"};

Json vec_json(const Vec3 &v) { return Json::array({v.x, v.y, v.z}); }

std::string join_path(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

// Walks the document, recording every problem instead of stopping at the
// first one.
class Reader {
public:
  std::vector<std::string> errors;

  void fail(const std::string &path, const std::string &message) {
    errors.push_back(path + ": " + message);
  }

  /// Reports keys of `obj` not in `allowed`.
  void allow(const Json &obj, const std::string &path,
             std::initializer_list<const char *> allowed) {
    for (const auto &[key, value] : obj.items()) {
      const bool known =
          std::any_of(allowed.begin(), allowed.end(),
                      [&](const char *a) { return key == a; });
      if (!known)
        fail(join_path(path, key), "unknown key");
    }
  }

  /// Child object, or nullptr (reported when required).
  const Json *object(const Json &parent, const std::string &path,
                     const char *key, bool required) {
    const std::string p = join_path(path, key);
    auto it = parent.find(key);
    if (it == parent.end()) {
      if (required)
        fail(p, "missing block");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(p, "expected an object");
      return nullptr;
    }
    return &*it;
  }

  template <class T>
  void read(const Json *obj, const std::string &path, const char *key, T &out,
            bool required) {
    if (!obj)
      return;
    const std::string p = join_path(path, key);
    auto it = obj->find(key);
    if (it == obj->end()) {
      if (required)
        fail(p, "missing value");
      return;
    }
    convert(*it, p, out);
  }

private:
  void convert(const Json &j, const std::string &p, double &out) {
    if (!j.is_number())
      return fail(p, "expected a number");
    out = j.get<double>();
    if (!std::isfinite(out))
      fail(p, "must be finite");
  }
  void convert(const Json &j, const std::string &p, bool &out) {
    if (!j.is_boolean())
      return fail(p, "expected true or false");
    out = j.get<bool>();
  }
  template <std::unsigned_integral T>
  void convert(const Json &j, const std::string &p, T &out) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
      return fail(p, "expected a non-negative integer");
    out = j.get<T>();
  }
  void convert(const Json &j, const std::string &p, std::string &out) {
    if (!j.is_string())
      return fail(p, "expected a string");
    out = j.get<std::string>();
  }
  void convert(const Json &j, const std::string &p, Vec3 &out) {
    if (!j.is_array() || j.size() != 3 ||
        !std::all_of(j.begin(), j.end(),
                     [](const Json &e) { return e.is_number(); }))
      return fail(p, "expected [x, y, z]");
    out = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  }
  void convert(const Json &j, const std::string &p, std::vector<double> &out) {
    if (!j.is_array() || !std::all_of(j.begin(), j.end(), [](const Json &e) {
          return e.is_number();
        }))
      return fail(p, "expected an array of numbers");
    out = j.get<std::vector<double>>();
  }
  void convert(const Json &j, const std::string &p,
               std::vector<std::string> &out) {
    if (!j.is_array() || !std::all_of(j.begin(), j.end(), [](const Json &e) {
          return e.is_string();
        }))
      return fail(p, "expected an array of strings");
    out = j.get<std::vector<std::string>>();
  }
};

/// Runs a validator and records its message under `path`.
template <class Fn>
void check(Reader &r, const std::string &path, Fn &&fn) {
  try {
    fn();
  } catch (const std::exception &e) {
    r.fail(path, e.what());
  }
}

Json campaigns_document(const CampaignSettings &c) {
  Json j;
  j["point_to_point"] = {{"horizon_s", c.point_to_point.horizon_s},
                         {"output_stride", c.point_to_point.output_stride}};
  const auto &p = c.linearity_pilot;
  Json modes = Json::array();
  for (auto m : p.modes)
    modes.push_back(to_string(m));
  j["linearity_pilot"] = {{"modes", modes},
                          {"scaled_inputs", p.scaled_inputs},
                          {"scaling_factors", p.scaling_factors},
                          {"durations_s", p.durations_s},
                          {"baseline_mol_per_m3", p.baseline},
                          {"pulse_on_s", p.pulse_on_s},
                          {"period_on_s", p.period_on_s},
                          {"period_off_s", p.period_off_s}};
  const auto &f = c.frequency_response;
  Json molecules = Json::array();
  for (auto m : f.molecules)
    molecules.push_back(std::string(molecule_name(m)));
  j["frequency_response"] = {{"frequencies_hz", f.frequencies_hz},
                             {"amplitude_mol_per_m3", f.amplitude},
                             {"molecules", molecules},
                             {"min_periods", f.min_periods},
                             {"min_duration_s", f.min_duration_s},
                             {"discard_fraction", f.discard_fraction}};
  const auto &h = c.sensitivity_heatmap;
  j["sensitivity_heatmap"] = {{"scale_85a", h.scale_85a},
                              {"scale_91r", h.scale_91r},
                              {"mode", to_string(h.mode)},
                              {"scaled_inputs", h.scaled_inputs},
                              {"input_scaling", h.input_scaling},
                              {"duration_s", h.duration_s}};
  const auto &d = c.distance_sweep;
  j["distance_sweep"] = {{"regimes", d.regimes},
                         {"distances_m", d.distances_m},
                         {"horizon_s", d.horizon_s}};
  const auto &a = c.alarm_map;
  j["alarm_map"] = {{"regime", a.regime},
                    {"nx", a.nx},
                    {"ny", a.ny},
                    {"x_range_m", {a.x_min, a.x_max}},
                    {"y_range_m", {a.y_min, a.y_max}},
                    {"duration_s", a.duration_s},
                    {"snapshot_times_s", a.snapshot_times_s}};
  const auto &g = c.single_glv_comparison;
  j["single_glv_comparison"] = {{"regime", g.regime},
                                {"horizon_s", g.horizon_s},
                                {"output_stride", g.output_stride}};
  return j;
}

CampaignSettings default_campaigns() {
  CampaignSettings c;
  c.linearity_pilot.scaling_factors = log_space(1.0, 1e6, 13);
  c.linearity_pilot.durations_s = {20.0, 60.0, 120.0, 300.0, 600.0};
  c.frequency_response.frequencies_hz = log_space(1e-4, 1.0, 12);
  c.sensitivity_heatmap.input_scaling = 100.0;
  c.distance_sweep.distances_m = log_space(0.05, 2.0, 8);
  c.alarm_map.snapshot_times_s = {3600.0, 7200.0, 10800.0, 14400.0};
  return c;
}

void read_campaigns(Reader &r, const Json *doc, CampaignSettings &c,
                    const std::string &configured_regime) {
  auto known = [&](const std::string &name) {
    return name == configured_regime || wind_regime(name).has_value();
  };
  const std::string root = "campaigns";
  const Json *block = r.object(*doc, "", "campaigns", false);
  if (!block)
    return;
  r.allow(*block, root,
          {"point_to_point", "linearity_pilot", "frequency_response",
           "sensitivity_heatmap", "distance_sweep", "alarm_map",
           "single_glv_comparison"});

  std::string p = root + ".point_to_point";
  if (const Json *o = r.object(*block, root, "point_to_point", false)) {
    r.allow(*o, p, {"horizon_s", "output_stride"});
    r.read(o, p, "horizon_s", c.point_to_point.horizon_s, false);
    r.read(o, p, "output_stride", c.point_to_point.output_stride, false);
    if (!(c.point_to_point.horizon_s > 0.0))
      r.fail(p + ".horizon_s", "must be > 0");
    if (c.point_to_point.output_stride < 1)
      r.fail(p + ".output_stride", "must be >= 1");
  }

  p = root + ".linearity_pilot";
  if (const Json *o = r.object(*block, root, "linearity_pilot", false)) {
    auto &pc = c.linearity_pilot;
    r.allow(*o, p,
            {"modes", "scaled_inputs", "scaling_factors", "durations_s",
             "baseline_mol_per_m3", "pulse_on_s", "period_on_s",
             "period_off_s"});
    std::vector<std::string> modes;
    r.read(o, p, "modes", modes, false);
    if (o->contains("modes")) {
      pc.modes.clear();
      for (const auto &m : modes)
        check(r, p + ".modes", [&] { pc.modes.push_back(parse_pilot_mode(m)); });
    }
    r.read(o, p, "scaled_inputs", pc.scaled_inputs, false);
    r.read(o, p, "scaling_factors", pc.scaling_factors, false);
    r.read(o, p, "durations_s", pc.durations_s, false);
    r.read(o, p, "baseline_mol_per_m3", pc.baseline, false);
    r.read(o, p, "pulse_on_s", pc.pulse_on_s, false);
    r.read(o, p, "period_on_s", pc.period_on_s, false);
    r.read(o, p, "period_off_s", pc.period_off_s, false);
  }
  check(r, p, [&] { c.linearity_pilot.validate(); });

  p = root + ".frequency_response";
  if (const Json *o = r.object(*block, root, "frequency_response", false)) {
    auto &fc = c.frequency_response;
    r.allow(*o, p,
            {"frequencies_hz", "amplitude_mol_per_m3", "molecules",
             "min_periods", "min_duration_s", "discard_fraction"});
    r.read(o, p, "frequencies_hz", fc.frequencies_hz, false);
    r.read(o, p, "amplitude_mol_per_m3", fc.amplitude, false);
    std::vector<std::string> molecules;
    r.read(o, p, "molecules", molecules, false);
    if (o->contains("molecules")) {
      fc.molecules.clear();
      for (const auto &m : molecules) {
        if (auto parsed = parse_molecule(m))
          fc.molecules.push_back(*parsed);
        else
          r.fail(p + ".molecules", "unknown molecule '" + m + "'");
      }
    }
    r.read(o, p, "min_periods", fc.min_periods, false);
    r.read(o, p, "min_duration_s", fc.min_duration_s, false);
    r.read(o, p, "discard_fraction", fc.discard_fraction, false);
  }

  p = root + ".sensitivity_heatmap";
  if (const Json *o = r.object(*block, root, "sensitivity_heatmap", false)) {
    auto &hc = c.sensitivity_heatmap;
    r.allow(*o, p,
            {"scale_85a", "scale_91r", "mode", "scaled_inputs",
             "input_scaling", "duration_s"});
    r.read(o, p, "scale_85a", hc.scale_85a, false);
    r.read(o, p, "scale_91r", hc.scale_91r, false);
    std::string mode = to_string(hc.mode);
    r.read(o, p, "mode", mode, false);
    check(r, p + ".mode", [&] { hc.mode = parse_pilot_mode(mode); });
    r.read(o, p, "scaled_inputs", hc.scaled_inputs, false);
    r.read(o, p, "input_scaling", hc.input_scaling, false);
    r.read(o, p, "duration_s", hc.duration_s, false);
  }
  c.sensitivity_heatmap.pilot = c.linearity_pilot;
  check(r, p, [&] { c.sensitivity_heatmap.validate(); });

  p = root + ".distance_sweep";
  if (const Json *o = r.object(*block, root, "distance_sweep", false)) {
    auto &dc = c.distance_sweep;
    r.allow(*o, p, {"regimes", "distances_m", "horizon_s"});
    r.read(o, p, "regimes", dc.regimes, false);
    r.read(o, p, "distances_m", dc.distances_m, false);
    r.read(o, p, "horizon_s", dc.horizon_s, false);
    for (const auto &name : dc.regimes)
      if (!known(name))
        r.fail(p + ".regimes", "unknown wind regime '" + name + "'");
  }
  check(r, p, [&] { c.distance_sweep.validate(); });

  p = root + ".alarm_map";
  if (const Json *o = r.object(*block, root, "alarm_map", false)) {
    auto &ac = c.alarm_map;
    r.allow(*o, p,
            {"regime", "nx", "ny", "x_range_m", "y_range_m", "duration_s",
             "snapshot_times_s"});
    r.read(o, p, "regime", ac.regime, false);
    if (!known(ac.regime))
      r.fail(p + ".regime", "unknown wind regime '" + ac.regime + "'");
    r.read(o, p, "nx", ac.nx, false);
    r.read(o, p, "ny", ac.ny, false);
    std::vector<double> xr{ac.x_min, ac.x_max}, yr{ac.y_min, ac.y_max};
    r.read(o, p, "x_range_m", xr, false);
    r.read(o, p, "y_range_m", yr, false);
    if (xr.size() != 2)
      r.fail(p + ".x_range_m", "expected [min, max]");
    else
      std::tie(ac.x_min, ac.x_max) = std::pair{xr[0], xr[1]};
    if (yr.size() != 2)
      r.fail(p + ".y_range_m", "expected [min, max]");
    else
      std::tie(ac.y_min, ac.y_max) = std::pair{yr[0], yr[1]};
    r.read(o, p, "duration_s", ac.duration_s, false);
    r.read(o, p, "snapshot_times_s", ac.snapshot_times_s, false);
  }

  p = root + ".single_glv_comparison";
  if (const Json *o = r.object(*block, root, "single_glv_comparison", false)) {
    auto &gc = c.single_glv_comparison;
    r.allow(*o, p, {"regime", "horizon_s", "output_stride"});
    r.read(o, p, "regime", gc.regime, false);
    if (!known(gc.regime))
      r.fail(p + ".regime", "unknown wind regime '" + gc.regime + "'");
    r.read(o, p, "horizon_s", gc.horizon_s, false);
    r.read(o, p, "output_stride", gc.output_stride, false);
    if (!(gc.horizon_s > 0.0))
      r.fail(p + ".horizon_s", "must be > 0");
    if (gc.output_stride < 1)
      r.fail(p + ".output_stride", "must be >= 1");
  }
}

// Builds the config, collecting every problem in `r`.
ScenarioConfig build(const Json &doc, Reader &r) {
  ScenarioConfig cfg;
  cfg.document = doc;
  cfg.campaigns = default_campaigns();
  Scenario &s = cfg.physics;
  if (!doc.is_object()) {
    r.fail("<root>", "expected an object");
    return cfg;
  }
  r.allow(doc, "",
          {"scenario", "seed", "output_dir", "environment", "transmitter",
           "molecules", "uptake", "leaf", "enzymes", "alarm", "wind", "loss",
           "geometry", "channel", "receiver", "campaigns"});
  r.read(&doc, "", "scenario", cfg.scenario, true);
  if (doc.contains("scenario")) {
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
      r.fail("scenario", "unknown scenario '" + cfg.scenario + "'");
  }
  r.read(&doc, "", "seed", s.seed, true);
  r.read(&doc, "", "output_dir", cfg.output_dir, false);

  const Json *env = r.object(doc, "", "environment", true);
  if (env) {
    r.allow(*env, "environment", {"temperature_k", "pressure_atm"});
    r.read(env, "environment", "temperature_k",
           s.uptake.env.temperature_kelvin, true);
    r.read(env, "environment", "pressure_atm", s.uptake.env.pressure_atm, true);
    check(r, "environment", [&] { s.uptake.env.validate(); });
  }

  const Json *tx = r.object(doc, "", "transmitter", true);
  std::string bits;
  if (tx) {
    const std::string p = "transmitter";
    r.allow(*tx, p, {"symbol_period_s", "sample_rate_hz", "bits", "n_bits"});
    r.read(tx, p, "symbol_period_s", s.symbol_period_s, true);
    r.read(tx, p, "sample_rate_hz", s.sample_rate_hz, true);
    r.read(tx, p, "bits", bits, false);
    r.read(tx, p, "n_bits", s.n_bits, false);
    check(r, p + ".bits", [&] { s.bits = parse_bit_string(bits); });
    check(r, p, [&] {
      EmissionConfig ec;
      ec.symbol_period_s = s.symbol_period_s;
      ec.sample_rate_hz = s.sample_rate_hz;
      ec.samples_per_symbol();
    });
  }

  const Json *mol = r.object(doc, "", "molecules", true);
  if (mol) {
    r.allow(*mol, "molecules", {"HAL", "HOL", "HAC"});
    for (Molecule m : kAllMolecules) {
      const std::string name(molecule_name(m));
      const std::string p = "molecules." + name;
      const Json *o = r.object(*mol, "molecules", name.c_str(), true);
      if (!o)
        continue;
      auto &u = s.uptake.molecules[m];
      r.allow(*o, p,
              {"amplitude_mol_per_s", "diffusivity_m2_per_s", "r_b_w", "r_s_w",
               "transpiration", "henry", "r_liq", "molar_mass",
               "log10_kow"});
      r.read(o, p, "amplitude_mol_per_s", s.amplitudes[m], true);
      r.read(o, p, "diffusivity_m2_per_s", u.diffusivity, true);
      r.read(o, p, "r_b_w", u.r_b_w, true);
      r.read(o, p, "r_s_w", u.r_s_w, true);
      r.read(o, p, "transpiration", u.transpiration, true);
      r.read(o, p, "henry", u.henry, true);
      if (!o->contains("r_liq") || (*o)["r_liq"].is_null())
        r.fail(p + ".r_liq", "r_liq is required for " + name +
                                 " (no tabulated value exists)");
      else
        r.read(o, p, "r_liq", u.r_liq, true);
      r.read(o, p, "molar_mass", u.molar_mass, true);
      r.read(o, p, "log10_kow", u.log10_kow, true);
      if (!(s.amplitudes[m] >= 0.0))
        r.fail(p + ".amplitude_mol_per_s", "must be >= 0");
      if (!(u.diffusivity > 0.0))
        r.fail(p + ".diffusivity_m2_per_s", "must be > 0");
      if (!(u.r_b_w > 0.0))
        r.fail(p + ".r_b_w", "must be > 0");
      if (!(u.r_s_w > 0.0))
        r.fail(p + ".r_s_w", "must be > 0");
      if (!(u.transpiration >= 0.0))
        r.fail(p + ".transpiration", "must be >= 0");
      if (!(u.henry > 0.0))
        r.fail(p + ".henry", "must be > 0");
      if (!std::isnan(u.r_liq) && !(u.r_liq > 0.0))
        r.fail(p + ".r_liq", "must be > 0");
      s.channel.diffusivity[m] = u.diffusivity;
    }
  }

  const Json *upt = r.object(doc, "", "uptake", true);
  if (upt) {
    r.allow(*upt, "uptake",
            {"water_diffusivity_m2_per_s", "clamp_nonnegative_absorption"});
    r.read(upt, "uptake", "water_diffusivity_m2_per_s", s.uptake.d_water,
           true);
    r.read(upt, "uptake", "clamp_nonnegative_absorption",
           s.uptake.clamp_nonnegative_absorption, false);
    if (!(s.uptake.d_water > 0.0))
      r.fail("uptake.water_diffusivity_m2_per_s", "must be > 0");
  }

  const Json *leaf = r.object(doc, "", "leaf", true);
  if (leaf) {
    const std::string p = "leaf";
    auto &l = s.uptake.leaf;
    r.allow(*leaf, p,
            {"delta_l_ias_m", "tortuosity", "f_ias", "la_fw_m2_per_g",
             "v_intra_l_per_g"});
    r.read(leaf, p, "delta_l_ias_m", l.delta_l_ias, true);
    r.read(leaf, p, "tortuosity", l.tortuosity, true);
    r.read(leaf, p, "f_ias", l.f_ias, true);
    r.read(leaf, p, "la_fw_m2_per_g", l.la_fw, true);
    r.read(leaf, p, "v_intra_l_per_g", l.v_intra, true);
    if (!(l.delta_l_ias > 0.0))
      r.fail(p + ".delta_l_ias_m", "must be > 0");
    if (!(l.tortuosity > 0.0))
      r.fail(p + ".tortuosity", "must be > 0");
    if (!(l.f_ias > 0.0 && l.f_ias < 1.0))
      r.fail(p + ".f_ias", "must lie in (0, 1)");
    if (!(l.la_fw > 0.0))
      r.fail(p + ".la_fw_m2_per_g", "must be > 0");
    if (!(l.v_intra > 0.0))
      r.fail(p + ".v_intra_l_per_g", "must be > 0");
  }

  const Json *enz = r.object(doc, "", "enzymes", true);
  if (enz) {
    r.allow(*enz, "enzymes",
            {"CHR", "CXE", "UGT85A53", "UGT91R1", "proteins_per_femtoliter"});
    double density = constants::kProteinDensityPerFemtoliter;
    r.read(enz, "enzymes", "proteins_per_femtoliter", density, true);
    if (!(density > 0.0))
      r.fail("enzymes.proteins_per_femtoliter", "must be > 0");
    EnzymeParams *slots[] = {&s.enzymes.chr, &s.enzymes.cxe,
                             &s.enzymes.ugt85a, &s.enzymes.ugt91r};
    const char *names[] = {"CHR", "CXE", "85A", "91R"};
    for (int i = 0; i < 4; ++i) {
      const std::string p = std::string("enzymes.") + kEnzymeKeys[i];
      EnzymeParams &e = *slots[i];
      e.name = names[i];
      const Json *o = r.object(*enz, "enzymes", kEnzymeKeys[i], true);
      if (!o)
        continue;
      r.allow(*o, p, {"k_cat_per_s", "k_m_um", "abundance_ppm"});
      r.read(o, p, "k_cat_per_s", e.k_cat, true);
      r.read(o, p, "k_m_um", e.k_m, true);
      r.read(o, p, "abundance_ppm", e.abundance_ppm, true);
      if (!(e.k_cat > 0.0))
        r.fail(p + ".k_cat_per_s", "must be > 0");
      if (!(e.k_m > 0.0))
        r.fail(p + ".k_m_um", "must be > 0");
      if (!(e.abundance_ppm >= 0.0))
        r.fail(p + ".abundance_ppm", "must be >= 0");
      else if (density > 0.0)
        e.e_total = enzyme_total_concentration(e.abundance_ppm, density);
    }
  }

  const Json *alarm = r.object(doc, "", "alarm", true);
  if (alarm) {
    double ug_per_g = 0.0, mw = 0.0;
    r.allow(*alarm, "alarm", {"threshold_ug_per_g", "hexvic_molar_mass"});
    r.read(alarm, "alarm", "threshold_ug_per_g", ug_per_g, true);
    r.read(alarm, "alarm", "hexvic_molar_mass", mw, true);
    if (!(ug_per_g > 0.0))
      r.fail("alarm.threshold_ug_per_g", "must be > 0");
    if (!(mw > 0.0))
      r.fail("alarm.hexvic_molar_mass", "must be > 0");
    if (ug_per_g > 0.0 && mw > 0.0 && s.uptake.leaf.v_intra > 0.0)
      s.alarm_threshold_um =
          alarm_threshold_to_micromolar(ug_per_g, mw, s.uptake.leaf.v_intra);
  }

  const Json *wind = r.object(doc, "", "wind", true);
  if (wind) {
    r.allow(*wind, "wind", {"regime", "mean_mps", "std_mps"});
    r.read(wind, "wind", "regime", s.wind_regime, true);
    const bool custom = s.wind_regime == "custom";
    if (auto m = wind_regime(s.wind_regime)) {
      s.wind = *m;
      for (const char *key : {"mean_mps", "std_mps"})
        if (wind->contains(key))
          r.fail(std::string("wind.") + key,
                 "only allowed with regime \"custom\"");
    } else if (!custom) {
      r.fail("wind.regime", "unknown wind regime '" + s.wind_regime +
                                "' (expected directed, nondirected_strong, "
                                "nondirected_weak or custom)");
    }
    if (custom) {
      std::vector<double> mean, stdev;
      r.read(wind, "wind", "mean_mps", mean, true);
      r.read(wind, "wind", "std_mps", stdev, true);
      if (wind->contains("mean_mps") && mean.size() != 2)
        r.fail("wind.mean_mps", "expected [x, y]");
      if (wind->contains("std_mps") && stdev.size() != 2)
        r.fail("wind.std_mps", "expected [x, y]");
      if (mean.size() == 2 && stdev.size() == 2) {
        s.wind.mean_x = mean[0];
        s.wind.mean_y = mean[1];
        s.wind.std_x = stdev[0];
        s.wind.std_y = stdev[1];
        check(r, "wind", [&] { s.wind.validate(); });
      }
    }
    s.wind.sample_rate_hz = s.sample_rate_hz;
  }

  const Json *loss = r.object(doc, "", "loss", true);
  if (loss) {
    r.allow(*loss, "loss", {"enabled", "HAL", "HOL", "HAC"});
    r.read(loss, "loss", "enabled", s.loss.enabled, true);
    for (Molecule m : kAllMolecules) {
      const std::string name(molecule_name(m));
      const std::string p = "loss." + name;
      const Json *o = r.object(*loss, "loss", name.c_str(), true);
      if (!o)
        continue;
      r.allow(*o, p, {"mean", "cv"});
      r.read(o, p, "mean", s.loss.mean[m], true);
      r.read(o, p, "cv", s.loss.cv[m], true);
      check(r, p, [&] { beta_params_from_mean_cv(s.loss.mean[m], s.loss.cv[m]); });
    }
  }

  const Json *geo = r.object(doc, "", "geometry", true);
  if (geo) {
    r.allow(*geo, "geometry", {"tx", "rx", "rx_glv_comparison"});
    r.read(geo, "geometry", "tx", s.channel.tx_position, true);
    r.read(geo, "geometry", "rx", s.rx_position, true);
    r.read(geo, "geometry", "rx_glv_comparison",
           cfg.campaigns.single_glv_comparison.rx_position, true);
    const Vec3 txp = s.channel.tx_position;
    if ((s.rx_position - txp).norm() < kMinSeparation)
      r.fail("geometry.rx", "closer than 1 mm to the transmitter");
    if ((cfg.campaigns.single_glv_comparison.rx_position - txp).norm() <
        kMinSeparation)
      r.fail("geometry.rx_glv_comparison",
             "closer than 1 mm to the transmitter");
  }

  {
    const ChannelConfig keep = s.channel;
    s.channel = default_channel();
    s.channel.tx_position = keep.tx_position;
    s.channel.diffusivity = keep.diffusivity;
  }
  s.receiver = default_receiver();
  if (const Json *ch = r.object(doc, "", "channel", false)) {
    const std::string p = "channel";
    auto &c = s.channel;
    r.allow(*ch, p,
            {"method", "quadrature", "quadrature_resolution",
             "aggregation_tolerance", "truncation_ratio", "coarse_ratio",
             "max_subdivisions"});
    std::string method = to_string(c.method), quad = to_string(c.quadrature);
    r.read(ch, p, "method", method, false);
    r.read(ch, p, "quadrature", quad, false);
    check(r, p + ".method", [&] { c.method = parse_channel_method(method); });
    check(r, p + ".quadrature",
          [&] { c.quadrature = parse_emission_quadrature(quad); });
    r.read(ch, p, "quadrature_resolution", c.quadrature_resolution, false);
    r.read(ch, p, "aggregation_tolerance", c.aggregation_tolerance, false);
    r.read(ch, p, "truncation_ratio", c.truncation_ratio, false);
    r.read(ch, p, "coarse_ratio", c.coarse_ratio, false);
    r.read(ch, p, "max_subdivisions", c.max_subdivisions, false);
  }
  s.channel.sample_rate_hz = s.sample_rate_hz;
  check(r, "channel", [&] { s.channel.validate(); });

  if (const Json *rc = r.object(doc, "", "receiver", false)) {
    r.allow(*rc, "receiver", {"substeps", "per_sample_absorption"});
    r.read(rc, "receiver", "substeps", s.receiver.substeps, false);
    r.read(rc, "receiver", "per_sample_absorption",
           s.receiver.per_sample_absorption, false);
    if (s.receiver.substeps < 1)
      r.fail("receiver.substeps", "must be >= 1");
  }

  read_campaigns(r, &doc, cfg.campaigns, s.wind_regime);
  check(r, "campaigns.frequency_response",
        [&] { cfg.campaigns.frequency_response.validate(s.sample_rate_hz); });
  check(r, "campaigns.alarm_map",
        [&] { cfg.campaigns.alarm_map.validate(s.channel.tx_position); });
  return cfg;
}

} // namespace

std::vector<std::string> scenario_names() {
  return {"point_to_point",      "linearity_pilot",
          "frequency_response",  "sensitivity_heatmap",
          "distance_sweep",      "alarm_map",
          "single_glv_comparison"};
}

Json parse_json_strict(const std::string &text) {
  // One frame per open object: keys seen so far and the current key.
  struct Frame {
    std::set<std::string> keys;
    std::string current;
    bool is_object;
  };
  std::vector<Frame> stack;
  std::vector<std::string> duplicates;
  auto path = [&] {
    std::string p;
    for (const auto &f : stack)
      if (f.is_object && !f.current.empty())
        p = join_path(p, f.current);
    return p;
  };
  Json::parser_callback_t cb = [&](int, Json::parse_event_t event,
                                   Json &parsed) {
    switch (event) {
    case Json::parse_event_t::object_start:
      stack.push_back({{}, {}, true});
      break;
    case Json::parse_event_t::array_start:
      stack.push_back({{}, {}, false});
      break;
    case Json::parse_event_t::object_end:
    case Json::parse_event_t::array_end:
      if (!stack.empty())
        stack.pop_back();
      break;
    case Json::parse_event_t::key: {
      const std::string key = parsed.get<std::string>();
      auto &top = stack.back();
      top.current = key;
      if (!top.keys.insert(key).second)
        duplicates.push_back(path());
      break;
    }
    case Json::parse_event_t::value:
      break;
    }
    return true;
  };
  Json doc;
  try {
    doc = Json::parse(text, cb, /*allow_exceptions=*/true,
                      /*ignore_comments=*/false);
  } catch (const Json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!duplicates.empty()) {
    std::string msg = "duplicate key(s) in config:";
    for (const auto &d : duplicates)
      msg += "\n  " + d;
    throw ConfigError(msg);
  }
  return doc;
}

Json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_strict(buf.str());
}

Json default_config_document() {
  namespace d = defaults;
  const UptakeParams up = d::uptake_params(true);
  const EnzymeSet en = d::enzymes();
  Json j;
  j["scenario"] = "point_to_point";
  j["seed"] = 1;
  j["output_dir"] = "";
  j["environment"] = {{"temperature_k", up.env.temperature_kelvin},
                      {"pressure_atm", up.env.pressure_atm}};
  j["transmitter"] = {{"symbol_period_s", d::kSymbolPeriod},
                      {"sample_rate_hz", d::kSampleRate},
                      {"bits", ""},
                      {"n_bits", 0}};
  for (Molecule m : kAllMolecules) {
    const auto &u = up.molecules[m];
    j["molecules"][std::string(molecule_name(m))] = {
        {"amplitude_mol_per_s", d::kEmissionAmplitudes[m]},
        {"diffusivity_m2_per_s", u.diffusivity},
        {"r_b_w", u.r_b_w},
        {"r_s_w", u.r_s_w},
        {"transpiration", u.transpiration},
        {"henry", u.henry},
        {"r_liq", u.r_liq},
        {"molar_mass", u.molar_mass},
        {"log10_kow", u.log10_kow}};
  }
  j["uptake"] = {{"water_diffusivity_m2_per_s", up.d_water},
                 {"clamp_nonnegative_absorption", false}};
  j["leaf"] = {{"delta_l_ias_m", up.leaf.delta_l_ias},
               {"tortuosity", up.leaf.tortuosity},
               {"f_ias", up.leaf.f_ias},
               {"la_fw_m2_per_g", up.leaf.la_fw},
               {"v_intra_l_per_g", up.leaf.v_intra}};
  const EnzymeParams *slots[] = {&en.chr, &en.cxe, &en.ugt85a, &en.ugt91r};
  for (int i = 0; i < 4; ++i)
    j["enzymes"][kEnzymeKeys[i]] = {{"k_cat_per_s", slots[i]->k_cat},
                                    {"k_m_um", slots[i]->k_m},
                                    {"abundance_ppm", slots[i]->abundance_ppm}};
  j["enzymes"]["proteins_per_femtoliter"] =
      constants::kProteinDensityPerFemtoliter;
  j["alarm"] = {{"threshold_ug_per_g", d::kAlarmThresholdUgPerG},
                {"hexvic_molar_mass", d::kHexVicMolarMass}};
  j["wind"] = {{"regime", "directed"}};
  j["loss"]["enabled"] = true;
  for (Molecule m : kAllMolecules)
    j["loss"][std::string(molecule_name(m))] = {{"mean", d::kLossMean},
                                                {"cv", d::kLossCv}};
  j["geometry"] = {{"tx", vec_json(d::kTxPosition)},
                   {"rx", vec_json(d::kRxPosition)},
                   {"rx_glv_comparison", vec_json(d::kRxPositionGlvComparison)}};
  const ChannelConfig ch = default_channel();
  j["channel"] = {{"method", to_string(ch.method)},
                  {"quadrature", to_string(ch.quadrature)},
                  {"quadrature_resolution", ch.quadrature_resolution},
                  {"aggregation_tolerance", ch.aggregation_tolerance},
                  {"truncation_ratio", ch.truncation_ratio},
                  {"coarse_ratio", ch.coarse_ratio},
                  {"max_subdivisions", ch.max_subdivisions}};
  const ReceiverOptions rx = default_receiver();
  j["receiver"] = {{"substeps", rx.substeps},
                   {"per_sample_absorption", rx.per_sample_absorption}};
  j["campaigns"] = campaigns_document(default_campaigns());
  return j;
}

Profile parse_profile(const std::string &name) {
  if (name == "desk")
    return Profile::Desk;
  if (name == "paper")
    return Profile::Paper;
  throw ConfigError("unknown profile '" + name + "' (expected desk or paper)");
}

std::string to_string(Profile p) {
  return p == Profile::Desk ? "desk" : "paper";
}

void apply_profile(Json &doc, Profile profile) {
  auto &c = doc["campaigns"];
  if (profile == Profile::Desk) {
    c["alarm_map"]["nx"] = 4;
    c["alarm_map"]["ny"] = 4;
    c["alarm_map"]["duration_s"] = 14400.0;
    c["alarm_map"]["snapshot_times_s"] = {3600.0, 7200.0, 10800.0, 14400.0};
    c["distance_sweep"]["horizon_s"] = 14400.0;
    c["single_glv_comparison"]["horizon_s"] = 14400.0;
    c["point_to_point"]["horizon_s"] = 14400.0;
  } else {
    c["alarm_map"]["nx"] = 20;
    c["alarm_map"]["ny"] = 20;
    c["alarm_map"]["duration_s"] = 36000.0;
    c["alarm_map"]["snapshot_times_s"] = {3600.0, 10800.0, 21600.0, 36000.0};
    c["distance_sweep"]["horizon_s"] = 36000.0;
    c["single_glv_comparison"]["horizon_s"] = 36000.0;
    c["point_to_point"]["horizon_s"] = 36000.0;
  }
}

void apply_override(Json &doc, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = parse_json_strict(text);
  } catch (const ConfigError &) {
    value = text;
  }
  Json *node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string seg = path.substr(start, dot - start);
    if (seg.empty())
      throw ConfigError("override '" + assignment + "' has an empty key");
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(seg);
      } catch (const std::exception &) {
        throw ConfigError("override '" + path + "': '" + seg +
                          "' is not an array index");
      }
      if (idx >= node->size())
        throw ConfigError("override '" + path + "': index out of range");
      node = &(*node)[idx];
    } else {
      if (!node->is_object() && !node->is_null())
        throw ConfigError("override '" + path + "': '" + seg +
                          "' is below a non-object value");
      node = &(*node)[seg];
    }
    if (dot == std::string::npos)
      break;
    start = dot + 1;
  }
  *node = value;
}

std::vector<std::string> config_problems(const Json &doc) {
  Reader r;
  build(doc, r);
  return r.errors;
}

ScenarioConfig config_from_json(const Json &doc) {
  Reader r;
  ScenarioConfig cfg = build(doc, r);
  if (!r.errors.empty()) {
    std::string msg = "invalid config (" + std::to_string(r.errors.size()) +
                      " problem" + (r.errors.size() == 1 ? "" : "s") + "):";
    for (const auto &e : r.errors)
      msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

std::vector<ProvenanceRow> parameter_provenance(const Json &doc) {
  static const char *const kPhysical[] = {
      "environment.", "transmitter.symbol_period_s",
      "transmitter.sample_rate_hz", "molecules.",
      "uptake.water_diffusivity_m2_per_s", "leaf.", "enzymes.", "alarm.",
      "wind.", "loss.HAL.", "loss.HOL.", "loss.HAC.", "geometry."};
  auto physical = [](const std::string &key) {
    return std::any_of(std::begin(kPhysical), std::end(kPhysical),
                       [&](const char *prefix) {
                         return key.rfind(prefix, 0) == 0;
                       });
  };
  // Leaves are scalars and arrays, keyed by dotted path.
  std::vector<std::pair<std::string, Json>> leaves;
  auto walk = [&](auto &self, const Json &node, const std::string &path) -> void {
    if (node.is_object()) {
      for (const auto &[key, value] : node.items())
        self(self, value, join_path(path, key));
    } else {
      leaves.emplace_back(path, node);
    }
  };
  walk(walk, doc, "");
  const Json reference = default_config_document();
  std::vector<ProvenanceRow> rows;
  for (const auto &[path, value] : leaves) {
    if (!physical(path))
      continue;
    const Json *ref = &reference;
    for (std::size_t start = 0; ref;) {
      const auto dot = path.find('.', start);
      const std::string seg = path.substr(start, dot - start);
      ref = ref->is_object() && ref->contains(seg) ? &(*ref)[seg] : nullptr;
      if (dot == std::string::npos)
        break;
      start = dot + 1;
    }
    const bool tabulated = ref && *ref == value;
    const bool is_r_liq = path.size() > 6 &&
                          path.compare(path.size() - 6, 6, ".r_liq") == 0;
    ProvenanceRow row;
    row.path = path;
    row.value = value.dump();
    row.tag = !tabulated ? "user" : is_r_liq ? "placeholder" : "paper-table";
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace glvsim
