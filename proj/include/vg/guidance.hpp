#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vg/dynamics.hpp"
#include "vg/planner.hpp"

namespace vg {

enum class GuidanceScheme { Path, Waypoints, HybridVector };

/// "path" | "waypoints" | "hybrid"
std::string_view scheme_name(GuidanceScheme s);
std::optional<GuidanceScheme> parse_scheme(std::string_view name);

/// Polar guidance toward the next waypoint. theta_norm = Theta/180 where
/// Theta is the signed angle from the heading to the waypoint bearing,
/// positive to the right.
struct HybridVector {
  double r = 0.0;
  double theta_norm = 0.0;
  bool operator==(const HybridVector&) const = default;
};

struct Sphere {
  Vec2 center;
  double radius = 0.5;
  bool operator==(const Sphere&) const = default;
};

struct GuidanceGeometry {
  GuidanceScheme scheme = GuidanceScheme::HybridVector;
  std::optional<Polyline> path_polyline;
  std::vector<Sphere> spheres;

  bool empty() const { return !path_polyline && spheres.empty(); }
};

struct GeometryOptions {
  double sphere_radius = 0.5;
  /// Length of path shown ahead of the agent; infinite shows the whole plan.
  double path_window = std::numeric_limits<double>::infinity();
};

/// Signed bearing error in degrees, [-180, 180), positive when the target is
/// to the agent's right. Zero when the target coincides with the agent.
double signed_bearing_error(const AgentState& agent, Vec2 target);

/// Index of the uncollected waypoint with the smallest arc length at or
/// ahead of the agent's projection onto the waypoint path. Throws AllCollected.
std::size_t next_waypoint_index(const AgentState& agent, const WaypointSet& w);
Vec2 next_waypoint(const AgentState& agent, const WaypointSet& w);

HybridVector hybrid_vector(const AgentState& agent, const WaypointSet& w);

struct CollectionUpdate {
  WaypointSet waypoints;
  int newly_collected = 0;
};

/// Marks every uncollected waypoint within radius of the agent as collected.
CollectionUpdate update_collection(const AgentState& agent, WaypointSet w, double radius);

/// Path: the plan polyline (windowed ahead of the agent when a finite window is
/// set); Waypoints: one sphere per uncollected waypoint; HybridVector: nothing.
GuidanceGeometry geometry_for(GuidanceScheme scheme, const PlannedPath& path, const WaypointSet& w,
                              const GeometryOptions& options = {}, const AgentState* agent = nullptr);

}  // namespace vg
