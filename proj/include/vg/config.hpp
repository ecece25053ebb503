#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vg/episode.hpp"

namespace vg {

/// "one-time" | "real-time" | "real-time:<period>"
std::string plan_mode_name(const PlanMode& m);
std::optional<PlanMode> parse_plan_mode(std::string_view name);

/// Applies a flat JSON object of overrides to cfg. Keys: start, goal, scheme,
/// plan, seed, horizon, pedestrians, pedestrian_speed_scale, on_line_threshold,
/// goal_radius, collision_radius, collection_radius, waypoint_spacing,
/// corridor_width, agent_speed, kappa, dt, omega_max, camera_height,
/// camera_pitch, camera_hfov, near_plane, far_plane, sphere_radius, path_window,
/// ribbon_width, supersample. Unknown keys and bad values throw UsageError; the
/// result is validated.
void apply_overrides(EpisodeConfig& cfg, const nlohmann::json& overrides);

/// Every key accepted by apply_overrides, with its current value.
nlohmann::json config_to_json(const EpisodeConfig& cfg);

}  // namespace vg
