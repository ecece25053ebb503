#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "vg/city_map.hpp"
#include "vg/error.hpp"
#include "vg/planner.hpp"

namespace vg::test {

// Builds a map from ASCII rows listed north to south: '.' Road, 's' Sidewalk,
// '#' Building, ' ' Void. Named points are given in meters.
inline CityMap ascii_map(const std::vector<std::string>& rows, double cell_size = 1.0,
                         std::map<std::string, Vec2> named = {}, std::vector<Pedestrian> peds = {},
                         std::string name = "ascii") {
  CityMap::Spec s;
  s.name = std::move(name);
  s.cell_size = cell_size;
  s.height = static_cast<int>(rows.size());
  s.width = static_cast<int>(rows.front().size());
  for (auto r = rows.rbegin(); r != rows.rend(); ++r) {
    if (static_cast<int>(r->size()) != s.width) throw Error(errc::kInvariantViolation, "ragged ascii map");
    for (char ch : *r) {
      switch (ch) {
        case '.': s.classes.push_back(SemanticClass::Road); break;
        case 's': s.classes.push_back(SemanticClass::Sidewalk); break;
        case '#': s.classes.push_back(SemanticClass::Building); break;
        default: s.classes.push_back(SemanticClass::Void); break;
      }
    }
  }
  s.named_points = std::move(named);
  s.pedestrians = std::move(peds);
  return CityMap(std::move(s));
}

inline std::string maps_dir() { return VG_TEST_MAPS_DIR; }

inline CityMap city8() { return load_map(maps_dir() + "/city8.json"); }

// Runs f and returns the vg::Error code it throws, or "" if it returns.
template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Independent oracle: textbook Dijkstra over doubles with the same movement
// model (8-connected Road cells, no corner cutting). Also records the
// straight/diagonal move counts of the chosen path.
struct OracleResult {
  bool reachable = false;
  double cost = 0.0;
  GridCost moves;
};

inline OracleResult dijkstra(const std::vector<std::string>& grid, int sc, int sr, int gc, int gr) {
  const int H = static_cast<int>(grid.size()), W = static_cast<int>(grid[0].size());
  auto road = [&](int c, int r) { return c >= 0 && r >= 0 && c < W && r < H && grid[r][c] == '.'; };
  std::vector<double> dist(W * H, std::numeric_limits<double>::infinity());
  std::vector<GridCost> moves(W * H);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[sr * W + sc] = 0.0;
  pq.push({0.0, sr * W + sc});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const int c = i % W, r = i / W;
    for (int dc = -1; dc <= 1; ++dc) {
      for (int dr = -1; dr <= 1; ++dr) {
        if (dc == 0 && dr == 0) continue;
        if (!road(c + dc, r + dr)) continue;
        const bool diag = dc != 0 && dr != 0;
        if (diag && !(road(c + dc, r) && road(c, r + dr))) continue;
        const double nd = d + (diag ? std::sqrt(2.0) : 1.0);
        const int j = (r + dr) * W + (c + dc);
        if (nd < dist[j]) {
          dist[j] = nd;
          moves[j] = moves[i] + (diag ? GridCost{0, 1} : GridCost{1, 0});
          pq.push({nd, j});
        }
      }
    }
  }
  const int g = gr * W + gc;
  return {std::isfinite(dist[g]), dist[g], moves[g]};
}

}  // namespace vg::test
