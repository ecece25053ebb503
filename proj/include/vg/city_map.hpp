#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vg/geometry.hpp"
#include "vg/semantic.hpp"

namespace vg {

inline constexpr const char* kMapSchema = "vgmap/1";

/// A walker moving along a polyline at constant speed.
struct Pedestrian {
  Polyline path;        // closed paths do not repeat the first vertex
  bool closed = false;  // closed paths wrap, open paths ping-pong
  double speed = 1.2;   // m/s
  double radius = 0.3;  // m
  double phase = 0.0;   // arc-length offset at t = 0, m
};

/// Position of a pedestrian at time t >= 0 seconds.
Vec2 pedestrian_pose(const Pedestrian& ped, double t);

struct RoadNode {
  std::string id;
  Vec2 position;
  bool intersection = false;
};

struct RoadGraph {
  std::vector<RoadNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // node indices

  std::size_t intersection_count() const;
};

struct CellIndex {
  int col = 0;
  int row = 0;
  constexpr bool operator==(const CellIndex&) const = default;
};

struct Bounds {
  Vec2 min;
  Vec2 max;
  bool contains(Vec2 p) const { return p.x >= min.x && p.x < max.x && p.y >= min.y && p.y < max.y; }
};

/// Static city raster plus route endpoints and walker paths.
///
/// Cell (col, row) covers the half-open rectangle
/// [origin.x + col*cell_size, origin.x + (col+1)*cell_size) x
/// [origin.y + row*cell_size, origin.y + (row+1)*cell_size); row 0 is the
/// southmost row. The constructor validates every invariant and throws
/// vg::Error(InvariantViolation) naming the offending field.
class CityMap {
 public:
  struct Spec {
    std::string name = "unnamed";
    double cell_size = 1.0;
    int width = 0;
    int height = 0;
    Vec2 origin;
    double building_height = 12.0;
    std::vector<SemanticClass> classes;  // row-major, width*height
    RoadGraph road_graph;
    std::map<std::string, Vec2> named_points;
    std::vector<Pedestrian> pedestrians;
  };

  explicit CityMap(Spec spec);

  const std::string& name() const { return s_.name; }
  double cell_size() const { return s_.cell_size; }
  int width() const { return s_.width; }
  int height() const { return s_.height; }
  Vec2 origin() const { return s_.origin; }
  double building_height() const { return s_.building_height; }
  Bounds bounds() const;
  const RoadGraph& road_graph() const { return s_.road_graph; }
  const std::map<std::string, Vec2>& named_points() const { return s_.named_points; }
  const std::vector<Pedestrian>& pedestrians() const { return s_.pedestrians; }
  const std::vector<SemanticClass>& classes() const { return s_.classes; }

  /// Throws UnknownLabel for a missing label.
  Vec2 named_point(const std::string& label) const;

  bool in_grid(CellIndex c) const { return c.col >= 0 && c.row >= 0 && c.col < s_.width && c.row < s_.height; }
  std::optional<CellIndex> cell_of(Vec2 p) const;
  Vec2 cell_center(CellIndex c) const;
  /// Void outside the grid.
  SemanticClass class_at(CellIndex c) const;
  SemanticClass class_at(int col, int row) const { return class_at(CellIndex{col, row}); }
  int linear_index(CellIndex c) const { return c.row * s_.width + c.col; }

 private:
  Spec s_;
};

/// Void outside bounds, else the class of the containing cell.
SemanticClass query_class(const CityMap& map, Vec2 p);

CityMap parse_map(const nlohmann::json& doc);
CityMap load_map(const std::filesystem::path& path);
/// Classes are written run-length encoded.
nlohmann::json map_to_json(const CityMap& map);

}  // namespace vg
