#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vg/city_map.hpp"

namespace vg {

inline constexpr std::string_view kScenarioSchema = "vgscen/1";

struct ScenarioSet {
  std::string name;
  std::string map;  // map name or path, resolved with resolve_map
  std::vector<std::pair<std::string, std::string>> routes;
  int episodes_per_route = 1;
  bool pedestrians = true;
};

/// Throws ParseError, or InvariantViolation for an empty route list or
/// episodes_per_route < 1.
ScenarioSet parse_scenario(const nlohmann::json& doc);
ScenarioSet load_scenario(const std::filesystem::path& path);

/// Throws UnknownLabel for the first route endpoint missing from the map.
void check_routes(const ScenarioSet& s, const CityMap& map);

/// Directories searched for maps and scenarios: each entry of VG_MAP_DIR
/// (colon separated), then the bundled maps directory.
std::vector<std::filesystem::path> map_search_path();

/// An existing file path is returned unchanged. Otherwise "<name>.json" is
/// looked up along map_search_path(). Throws IoError when nothing matches.
std::filesystem::path resolve_map(const std::string& name_or_path);

/// Like resolve_map, but a bare name such as "seen" is also tried as
/// "<map_name>_seen.json".
std::filesystem::path resolve_scenario(const std::string& name_or_path, const std::string& map_name);

}  // namespace vg
