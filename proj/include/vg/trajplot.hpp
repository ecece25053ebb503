#pragma once

#include <span>
#include <string>

#include "vg/city_map.hpp"
#include "vg/report.hpp"

namespace vg {

struct TrajplotOptions {
  double pixels_per_meter = 2.0;
};

/// Top-down SVG of the map with every log overlaid: planned path in blue,
/// waypoints as yellow dots, actual trajectory in pink. No logs gives the
/// map alone. Throws MapMismatch when a log names a different map.
std::string render_trajplot_svg(const CityMap& map, std::span<const EpisodeLog> logs, const TrajplotOptions& options = {});

}  // namespace vg
