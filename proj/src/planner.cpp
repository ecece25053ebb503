#include "vg/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "vg/error.hpp"

namespace vg {

double GridCost::cells() const {
  return static_cast<double>(straight) + static_cast<double>(diagonal) * std::numbers::sqrt2;
}

std::strong_ordering GridCost::operator<=>(const GridCost& o) const {
  // sign of p + q*sqrt(2)
  const std::int64_t p = straight - o.straight;
  const std::int64_t q = diagonal - o.diagonal;
  if (p == 0 && q == 0) return std::strong_ordering::equal;
  if (p >= 0 && q >= 0) return std::strong_ordering::greater;
  if (p <= 0 && q <= 0) return std::strong_ordering::less;
  const std::int64_t p2 = p * p;
  const std::int64_t q2 = 2 * q * q;
  if (p > 0) return p2 > q2 ? std::strong_ordering::greater : std::strong_ordering::less;
  return q2 > p2 ? std::strong_ordering::greater : std::strong_ordering::less;
}

GridCost octile(CellIndex a, CellIndex b) {
  const std::int64_t dx = std::abs(a.col - b.col);
  const std::int64_t dy = std::abs(a.row - b.row);
  const std::int64_t d = std::min(dx, dy);
  return {std::max(dx, dy) - d, d};
}

std::optional<CellIndex> snap_to_road(const CityMap& map, Vec2 p) {
  const double cs = map.cell_size();
  const Vec2 o = map.origin();
  const CellIndex home{static_cast<int>(std::floor((p.x - o.x) / cs)), static_cast<int>(std::floor((p.y - o.y) / cs))};
  if (map.class_at(home) == SemanticClass::Road) return home;

  std::optional<CellIndex> best;
  double best_d = 0.0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const CellIndex c{home.col + dc, home.row + dr};
      if ((dc == 0 && dr == 0) || map.class_at(c) != SemanticClass::Road) continue;
      const double d = distance(map.cell_center(c), p);
      if (!best || d < best_d) {
        best = c;
        best_d = d;
      }
    }
  }
  return best;
}

namespace {

struct OpenEntry {
  GridCost f;
  GridCost h;
  int index;
};

struct OpenAfter {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.index > b.index;
  }
};

constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

bool is_road(const CityMap& map, int col, int row) { return map.class_at(col, row) == SemanticClass::Road; }

Polyline simplify(const std::vector<CellIndex>& cells, const CityMap& map) {
  Polyline out;
  if (cells.empty()) return out;
  out.push_back(map.cell_center(cells.front()));
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    const int dx0 = cells[i].col - cells[i - 1].col, dy0 = cells[i].row - cells[i - 1].row;
    const int dx1 = cells[i + 1].col - cells[i].col, dy1 = cells[i + 1].row - cells[i].row;
    if (dx0 != dx1 || dy0 != dy1) out.push_back(map.cell_center(cells[i]));
  }
  if (cells.size() > 1) out.push_back(map.cell_center(cells.back()));
  return out;
}

}  // namespace

PlannedPath plan(const CityMap& map, Vec2 from, Vec2 to) {
  const auto start = snap_to_road(map, from);
  if (!start) throw Error(errc::kOffRoad, "start point is not within one cell of a Road cell");
  const auto goal = snap_to_road(map, to);
  if (!goal) throw Error(errc::kOffRoad, "goal point is not within one cell of a Road cell");

  const int w = map.width();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(map.height());
  std::vector<GridCost> g(n);
  std::vector<bool> seen(n, false), closed(n, false);
  std::vector<int> parent(n, -1);

  const int start_idx = map.linear_index(*start);
  const int goal_idx = map.linear_index(*goal);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenAfter> open;
  seen[start_idx] = true;
  open.push({octile(*start, *goal), octile(*start, *goal), start_idx});

  bool found = false;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    if (closed[top.index]) continue;
    closed[top.index] = true;
    if (top.index == goal_idx) {
      found = true;
      break;
    }
    const CellIndex c{top.index % w, top.index / w};
    for (const auto& d : kDirs) {
      const int nc = c.col + d[0], nr = c.row + d[1];
      if (!is_road(map, nc, nr)) continue;
      const bool diag = d[0] != 0 && d[1] != 0;
      if (diag && (!is_road(map, c.col + d[0], c.row) || !is_road(map, c.col, c.row + d[1]))) continue;
      const int ni = nr * w + nc;
      if (closed[ni]) continue;
      const GridCost cand = g[top.index] + (diag ? GridCost{0, 1} : GridCost{1, 0});
      if (seen[ni] && !(cand < g[ni])) continue;
      seen[ni] = true;
      g[ni] = cand;
      parent[ni] = top.index;
      const GridCost h = octile({nc, nr}, *goal);
      open.push({cand + h, h, ni});
    }
  }
  if (!found) throw Error(errc::kNoPath, "no Road-connected path between the endpoints");

  std::vector<CellIndex> cells;
  for (int i = goal_idx; i != -1; i = parent[i]) cells.push_back({i % w, i / w});
  std::reverse(cells.begin(), cells.end());

  PlannedPath out;
  out.points = simplify(cells, map);
  out.length = polyline_length(out.points);
  out.cost = g[goal_idx];
  return out;
}

std::size_t WaypointSet::collected_count() const {
  return static_cast<std::size_t>(std::count_if(waypoints.begin(), waypoints.end(), [](const Waypoint& w) { return w.collected; }));
}

WaypointSet extract_waypoints(const PlannedPath& path, double spacing) {
  WaypointSet out;
  out.spacing = spacing;
  out.path = path.points;
  if (path.points.empty()) return out;
  const double length = polyline_length(path.points);
  const double eps = 1e-9 * std::max(1.0, length);
  for (int k = 1;; ++k) {
    const double s = k * spacing;
    if (!(s < length - eps)) break;
    out.waypoints.push_back({point_at_arc_length(path.points, s), s, false});
  }
  out.waypoints.push_back({path.points.back(), length, false});
  return out;
}

PathPtr plan_for_step(const PlanMode& mode, const CityMap& map, const AgentState& agent, Vec2 start, Vec2 goal,
                      const PathPtr& cached) {
  if (mode.kind == PlanMode::Kind::OneTime) {
    if (cached) return cached;
    return std::make_shared<const PlannedPath>(plan(map, start, goal));
  }
  const int period = std::max(1, mode.period);
  if (cached && agent.t % period != 0) return cached;
  return std::make_shared<const PlannedPath>(plan(map, agent.position, goal));
}

}  // namespace vg
