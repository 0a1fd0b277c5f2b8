#pragma once

#include "glvsim/analyses.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace glvsim {

using Json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "0.1.0";

std::vector<std::string> scenario_names();

/// Campaign settings; each campaign reads only its own block.
struct CampaignSettings {
  PointToPointConfig point_to_point;
  PilotConfig linearity_pilot;
  FrequencyResponseConfig frequency_response;
  HeatmapConfig sensitivity_heatmap;
  DistanceSweepConfig distance_sweep;
  AlarmMapConfig alarm_map;
  SingleGlvConfig single_glv_comparison;
};

struct ScenarioConfig {
  std::string scenario = "point_to_point";
  std::string output_dir; // empty: chosen by the caller
  Scenario physics;
  CampaignSettings campaigns;
  /// The document the config was built from, after profile and overrides.
  Json document;
};

/// Parses JSON text, rejecting duplicate object keys and comments.
/// Throws ConfigError listing every duplicate.
Json parse_json_strict(const std::string &text);
Json read_json_file(const std::filesystem::path &path);

/// The shipped default document (tabulated values, r_liq placeholders).
Json default_config_document();

enum class Profile { Desk, Paper };
Profile parse_profile(const std::string &name);
std::string to_string(Profile p);
/// Overwrites the campaign sizes that distinguish the two profiles.
void apply_profile(Json &doc, Profile profile);

/// Applies "dotted.path=value"; the value is read as JSON when it parses,
/// otherwise as a string. Missing objects along the path are created.
void apply_override(Json &doc, const std::string &assignment);

/// All schema and invariant problems, one message per offending key.
std::vector<std::string> config_problems(const Json &doc);

/// Builds the config; throws ConfigError listing every problem.
ScenarioConfig config_from_json(const Json &doc);

struct ProvenanceRow {
  std::string path;
  std::string value;
  std::string tag; // "paper-table", "user" or "placeholder"
};

/// Physical parameters with their origin, by comparison against the
/// tabulated defaults.
std::vector<ProvenanceRow> parameter_provenance(const Json &doc);

} // namespace glvsim
