#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "reseq/controller.hpp"
#include "reseq/domain.hpp"
#include "reseq/paintshop.hpp"

namespace reseq {

using nlohmann::json;

struct ScenarioConfig {
  std::string scenario_id = "scenario";
  ControllerConfig controller;
  PaintShopConfig paintshop;
  // Offset from midnight UTC at which a production day starts.
  std::int64_t day_boundary_seconds = 0;

  bool operator==(const ScenarioConfig&) const = default;
};

struct Scenario {
  ScenarioCatalog catalog;
  ScenarioConfig config;
};

/// Parses JSON text; syntax errors become Error(ParseError) naming `source` and the line.
json parse_json_text(std::string_view text, std::string_view source);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Integer, "p/q", decimal string or JSON number.
Weight weight_from_json(const json& j);
json weight_to_json(const Weight& w);

json order_to_json(const Order& o);
Order order_from_json(const json& j);
json constraint_to_json(const Constraint& c);
Constraint constraint_from_json(const json& j);
json config_to_json(const ScenarioConfig& c);
ScenarioConfig config_from_json(const json& j);

/// Reads orders.json, constraints.json and the optional colors.json and config.json
/// from `dir` without validating the catalog. Missing color and body type
/// declarations are derived from the orders.
Scenario read_scenario(const std::filesystem::path& dir);
/// read_scenario followed by validate_catalog; throws Error(ValidationFailed) listing
/// every violation.
Scenario load_scenario(const std::filesystem::path& dir);
void save_scenario(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace reseq
