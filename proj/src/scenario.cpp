#include "vg/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vg/error.hpp"

namespace vg {

using nlohmann::json;

ScenarioSet parse_scenario(const json& doc) {
  try {
    if (!doc.is_object()) throw Error(errc::kParseError, "scenario: expected a JSON object");
    const auto schema = doc.value("schema", std::string{});
    if (schema != kScenarioSchema) {
      throw Error(errc::kParseError, "schema: expected \"" + std::string(kScenarioSchema) + "\", got \"" + schema + "\"");
    }
    ScenarioSet s;
    s.name = doc.value("name", std::string{"custom"});
    s.map = doc.at("map").get<std::string>();
    s.episodes_per_route = doc.value("episodes_per_route", 1);
    s.pedestrians = doc.value("pedestrians", true);
    for (const auto& r : doc.at("routes")) {
      if (!r.is_array() || r.size() != 2) throw Error(errc::kParseError, "routes: expected [start, goal] pairs");
      s.routes.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
    if (s.routes.empty()) throw Error(errc::kInvariantViolation, "routes: must not be empty");
    if (s.episodes_per_route < 1) throw Error(errc::kInvariantViolation, "episodes_per_route: must be >= 1");
    return s;
  } catch (const json::exception& e) {
    throw Error(errc::kParseError, std::string("scenario: ") + e.what());
  }
}

ScenarioSet load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIoError, "cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(errc::kParseError, path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

void check_routes(const ScenarioSet& s, const CityMap& map) {
  for (const auto& [a, b] : s.routes) {
    map.named_point(a);
    map.named_point(b);
  }
}

std::vector<std::filesystem::path> map_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("VG_MAP_DIR")) {
    std::stringstream ss(env);
    std::string dir;
    while (std::getline(ss, dir, ':')) {
      if (!dir.empty()) dirs.emplace_back(dir);
    }
  }
  dirs.emplace_back(VG_DEFAULT_MAP_DIR);
  return dirs;
}

namespace {

std::filesystem::path find_in_search_path(const std::vector<std::string>& candidates, const std::string& what) {
  for (const auto& dir : map_search_path()) {
    for (const auto& name : candidates) {
      const auto p = dir / name;
      if (std::filesystem::is_regular_file(p)) return p;
    }
  }
  throw Error(errc::kIoError, "cannot find " + what + " (set VG_MAP_DIR or pass a file path)");
}

}  // namespace

std::filesystem::path resolve_map(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) return name_or_path;
  return find_in_search_path({name_or_path + ".json"}, "map '" + name_or_path + "'");
}

std::filesystem::path resolve_scenario(const std::string& name_or_path, const std::string& map_name) {
  if (std::filesystem::is_regular_file(name_or_path)) return name_or_path;
  return find_in_search_path({name_or_path + ".json", map_name + "_" + name_or_path + ".json"},
                             "scenario '" + name_or_path + "'");
}

}  // namespace vg
