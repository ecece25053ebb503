#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "vg/city_map.hpp"
#include "vg/dynamics.hpp"
#include "vg/geometry.hpp"

namespace vg {

/// Exact cost of an 8-connected grid path in cell units: straight + diagonal*sqrt(2).
/// Ordering is exact (no floating point), so equal-cost paths compare equal.
struct GridCost {
  std::int64_t straight = 0;
  std::int64_t diagonal = 0;

  double cells() const;
  GridCost operator+(GridCost o) const { return {straight + o.straight, diagonal + o.diagonal}; }
  bool operator==(const GridCost&) const = default;
  std::strong_ordering operator<=>(const GridCost& o) const;
};

/// Octile distance between two cells.
GridCost octile(CellIndex a, CellIndex b);

struct PlannedPath {
  Polyline points;  // snapped start center ... snapped goal center, collinear vertices removed
  double length = 0.0;  // meters, sum of segment lengths
  GridCost cost;        // exact lattice cost in cells
};

/// The Road cell containing p, else the nearest Road cell center among the 8
/// neighbors. nullopt when none qualifies.
std::optional<CellIndex> snap_to_road(const CityMap& map, Vec2 p);

/// Shortest 8-connected path over Road cells (A*, octile heuristic). A diagonal
/// move requires both adjacent orthogonal cells to be Road as well.
/// Throws OffRoad when an endpoint cannot be snapped, NoPath when unreachable.
PlannedPath plan(const CityMap& map, Vec2 from, Vec2 to);

struct Waypoint {
  Vec2 position;
  double arc_length = 0.0;  // along WaypointSet::path
  bool collected = false;
  bool operator==(const Waypoint&) const = default;
};

struct WaypointSet {
  std::vector<Waypoint> waypoints;
  double spacing = 10.0;
  Polyline path;  // the path the waypoints were cut from

  std::size_t collected_count() const;
  std::size_t remaining() const { return waypoints.size() - collected_count(); }
};

/// Waypoints at arc lengths spacing, 2*spacing, ... strictly before the end,
/// then the path end itself. Requires spacing > 0.
WaypointSet extract_waypoints(const PlannedPath& path, double spacing);

struct PlanMode {
  enum class Kind { OneTime, RealTime };
  Kind kind = Kind::OneTime;
  int period = 1;  // steps between replans, RealTime only

  static constexpr PlanMode one_time() { return {}; }
  static constexpr PlanMode real_time(int period = 1) { return {Kind::RealTime, period}; }
  bool operator==(const PlanMode&) const = default;
};

using PathPtr = std::shared_ptr<const PlannedPath>;

/// OneTime: the cached S->D plan (computed when cached is null).
/// RealTime(p): a fresh plan from the agent position when t % p == 0, else cached.
PathPtr plan_for_step(const PlanMode& mode, const CityMap& map, const AgentState& agent, Vec2 start, Vec2 goal,
                      const PathPtr& cached);

}  // namespace vg
