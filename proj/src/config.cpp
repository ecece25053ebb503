#include "vg/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "vg/error.hpp"

namespace vg {

using nlohmann::json;

std::string plan_mode_name(const PlanMode& m) {
  if (m.kind == PlanMode::Kind::OneTime) return "one-time";
  if (m.period == 1) return "real-time";
  return "real-time:" + std::to_string(m.period);
}

std::optional<PlanMode> parse_plan_mode(std::string_view name) {
  if (name == "one-time") return PlanMode::one_time();
  if (name == "real-time") return PlanMode::real_time(1);
  constexpr std::string_view prefix = "real-time:";
  if (!name.starts_with(prefix)) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  int period = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), period);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || period < 1) return std::nullopt;
  return PlanMode::real_time(period);
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(errc::kUsage, "config key '" + key + "': " + what);
}

double number(const std::string& key, const json& v) {
  if (!v.is_number()) bad(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(key, "expected a finite number");
  return d;
}

std::string text(const std::string& key, const json& v) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

using Setter = std::function<void(EpisodeConfig&, const std::string&, const json&)>;

Setter real(double EpisodeConfig::*field) {
  return [field](EpisodeConfig& c, const std::string& k, const json& v) { c.*field = number(k, v); };
}

template <class Sub>
Setter real(Sub EpisodeConfig::*sub, double Sub::*field) {
  return [sub, field](EpisodeConfig& c, const std::string& k, const json& v) { (c.*sub).*field = number(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"start", [](EpisodeConfig& c, const std::string& k, const json& v) { c.start_label = text(k, v); }},
      {"goal", [](EpisodeConfig& c, const std::string& k, const json& v) { c.goal_label = text(k, v); }},
      {"scheme",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         auto s = parse_scheme(text(k, v));
         if (!s) bad(k, "expected path|waypoints|hybrid");
         c.scheme = *s;
       }},
      {"plan",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         auto m = parse_plan_mode(text(k, v));
         if (!m) bad(k, "expected one-time|real-time|real-time:<period>");
         c.plan_mode = *m;
       }},
      {"seed",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         if (!v.is_number_integer() || v.get<long long>() < 0) bad(k, "expected a non-negative integer");
         c.seed = v.get<std::uint64_t>();
       }},
      {"horizon",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         if (!v.is_number_integer()) bad(k, "expected an integer");
         c.horizon = v.get<int>();
       }},
      {"pedestrians",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         if (!v.is_boolean()) bad(k, "expected true or false");
         c.pedestrians = v.get<bool>();
       }},
      {"supersample",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         if (!v.is_number_integer() || v.get<int>() < 1) bad(k, "expected an integer >= 1");
         c.render.supersample = v.get<int>();
       }},
      {"pedestrian_speed_scale", real(&EpisodeConfig::pedestrian_speed_scale)},
      {"on_line_threshold", real(&EpisodeConfig::on_line_threshold)},
      {"goal_radius", real(&EpisodeConfig::goal_radius)},
      {"collision_radius", real(&EpisodeConfig::collision_radius)},
      {"collection_radius", real(&EpisodeConfig::collection_radius)},
      {"waypoint_spacing", real(&EpisodeConfig::waypoint_spacing)},
      {"corridor_width", real(&EpisodeConfig::corridor_width)},
      {"agent_speed", real(&EpisodeConfig::agent_speed)},
      {"kappa", real(&EpisodeConfig::dynamics, &DynamicsParams::kappa)},
      {"dt", real(&EpisodeConfig::dynamics, &DynamicsParams::dt)},
      {"omega_max", real(&EpisodeConfig::dynamics, &DynamicsParams::omega_max)},
      {"camera_height", real(&EpisodeConfig::camera, &CameraModel::height)},
      {"camera_pitch", real(&EpisodeConfig::camera, &CameraModel::pitch)},
      {"camera_hfov", real(&EpisodeConfig::camera, &CameraModel::hfov)},
      {"near_plane", real(&EpisodeConfig::camera, &CameraModel::near_plane)},
      {"far_plane", real(&EpisodeConfig::camera, &CameraModel::far_plane)},
      {"sphere_radius", real(&EpisodeConfig::geometry, &GeometryOptions::sphere_radius)},
      {"path_window",
       [](EpisodeConfig& c, const std::string& k, const json& v) {
         // null means "whole plan"; JSON has no infinity literal.
         c.geometry.path_window = v.is_null() ? std::numeric_limits<double>::infinity() : number(k, v);
       }},
      {"ribbon_width", real(&EpisodeConfig::render, &RenderOptions::ribbon_width)},
  };
  return table;
}

}  // namespace

void apply_overrides(EpisodeConfig& cfg, const json& overrides) {
  if (overrides.is_null()) return;
  if (!overrides.is_object()) throw Error(errc::kUsage, "config overrides must be a JSON object");
  EpisodeConfig next = cfg;
  for (const auto& [key, value] : overrides.items()) {
    auto it = setters().find(key);
    if (it == setters().end()) throw Error(errc::kUsage, "unknown config key '" + key + "'");
    it->second(next, key, value);
  }
  try {
    next.validate();
  } catch (const Error& e) {
    throw Error(errc::kUsage, e.what());
  }
  cfg = std::move(next);
}

json config_to_json(const EpisodeConfig& c) {
  return {{"start", c.start_label},
          {"goal", c.goal_label},
          {"scheme", scheme_name(c.scheme)},
          {"plan", plan_mode_name(c.plan_mode)},
          {"seed", c.seed},
          {"horizon", c.horizon},
          {"pedestrians", c.pedestrians},
          {"pedestrian_speed_scale", c.pedestrian_speed_scale},
          {"on_line_threshold", c.on_line_threshold},
          {"goal_radius", c.goal_radius},
          {"collision_radius", c.collision_radius},
          {"collection_radius", c.collection_radius},
          {"waypoint_spacing", c.waypoint_spacing},
          {"corridor_width", c.corridor_width},
          {"agent_speed", c.agent_speed},
          {"kappa", c.dynamics.kappa},
          {"dt", c.dynamics.dt},
          {"omega_max", c.dynamics.omega_max},
          {"camera_height", c.camera.height},
          {"camera_pitch", c.camera.pitch},
          {"camera_hfov", c.camera.hfov},
          {"near_plane", c.camera.near_plane},
          {"far_plane", c.camera.far_plane},
          {"sphere_radius", c.geometry.sphere_radius},
          {"path_window", std::isinf(c.geometry.path_window) ? json(nullptr) : json(c.geometry.path_window)},
          {"ribbon_width", c.render.ribbon_width},
          {"supersample", c.render.supersample}};
}

}  // namespace vg
