#include "vg/guidance.hpp"

#include <cmath>

#include "vg/error.hpp"

namespace vg {

std::string_view scheme_name(GuidanceScheme s) {
  switch (s) {
    case GuidanceScheme::Path: return "path";
    case GuidanceScheme::Waypoints: return "waypoints";
    case GuidanceScheme::HybridVector: return "hybrid";
  }
  return "hybrid";
}

std::optional<GuidanceScheme> parse_scheme(std::string_view name) {
  if (name == "path") return GuidanceScheme::Path;
  if (name == "waypoints") return GuidanceScheme::Waypoints;
  if (name == "hybrid") return GuidanceScheme::HybridVector;
  return std::nullopt;
}

double signed_bearing_error(const AgentState& agent, Vec2 target) {
  const Vec2 d = target - agent.position;
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  return wrap_deg(agent.heading - bearing_deg(agent.position, target));
}

std::size_t next_waypoint_index(const AgentState& agent, const WaypointSet& w) {
  const double s_agent = w.path.empty() ? 0.0 : project_onto_polyline(w.path, agent.position).arc_length;
  std::optional<std::size_t> ahead, fallback;
  for (std::size_t i = 0; i < w.waypoints.size(); ++i) {
    const auto& wp = w.waypoints[i];
    if (wp.collected) continue;
    if (wp.arc_length >= s_agent - 1e-9) {
      if (!ahead || wp.arc_length < w.waypoints[*ahead].arc_length) ahead = i;
    } else if (!fallback || wp.arc_length > w.waypoints[*fallback].arc_length) {
      fallback = i;
    }
  }
  if (ahead) return *ahead;
  if (fallback) return *fallback;
  throw Error(errc::kAllCollected, "all waypoints are collected");
}

Vec2 next_waypoint(const AgentState& agent, const WaypointSet& w) {
  return w.waypoints[next_waypoint_index(agent, w)].position;
}

HybridVector hybrid_vector(const AgentState& agent, const WaypointSet& w) {
  const Vec2 target = next_waypoint(agent, w);
  const double r = distance(agent.position, target);
  if (r == 0.0) return {0.0, 0.0};
  return {r, signed_bearing_error(agent, target) / 180.0};
}

CollectionUpdate update_collection(const AgentState& agent, WaypointSet w, double radius) {
  int count = 0;
  for (auto& wp : w.waypoints) {
    if (!wp.collected && distance(wp.position, agent.position) <= radius) {
      wp.collected = true;
      ++count;
    }
  }
  return {std::move(w), count};
}

GuidanceGeometry geometry_for(GuidanceScheme scheme, const PlannedPath& path, const WaypointSet& w,
                              const GeometryOptions& options, const AgentState* agent) {
  GuidanceGeometry g;
  g.scheme = scheme;
  switch (scheme) {
    case GuidanceScheme::Path:
      if (std::isfinite(options.path_window) && agent && !path.points.empty()) {
        const double s0 = project_onto_polyline(path.points, agent->position).arc_length;
        g.path_polyline = polyline_slice(path.points, s0, s0 + options.path_window);
      } else {
        g.path_polyline = path.points;
      }
      break;
    case GuidanceScheme::Waypoints:
      for (const auto& wp : w.waypoints) {
        if (!wp.collected) g.spheres.push_back({wp.position, options.sphere_radius});
      }
      break;
    case GuidanceScheme::HybridVector:
      break;
  }
  return g;
}

}  // namespace vg
