#include "vg/trajplot.hpp"

#include <cstdio>

#include "vg/error.hpp"

namespace vg {

namespace {

constexpr const char* kPlanColor = "#1f5bff";
constexpr const char* kWaypointColor = "#ffd400";
constexpr const char* kTrajectoryColor = "#ff5fb4";

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_trajplot_svg(const CityMap& map, std::span<const EpisodeLog> logs, const TrajplotOptions& options) {
  for (const auto& log : logs) {
    if (log.map != map.name()) {
      throw Error(errc::kMapMismatch, "log for map '" + log.map + "' cannot be drawn on map '" + map.name() + "'");
    }
  }
  const double k = options.pixels_per_meter;
  const Bounds b = map.bounds();
  const double width = (b.max.x - b.min.x) * k;
  const double height = (b.max.y - b.min.y) * k;
  // World y grows north; SVG y grows down.
  auto sx = [&](double x) { return num((x - b.min.x) * k); };
  auto sy = [&](double y) { return num((b.max.y - y) * k); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  svg += "<g id=\"map\" shape-rendering=\"crispEdges\">\n";
  const double cs = map.cell_size();
  for (int row = 0; row < map.height(); ++row) {
    for (int col = 0; col < map.width();) {
      const SemanticClass cls = map.class_at(col, row);
      int end = col;
      while (end < map.width() && map.class_at(end, row) == cls) ++end;
      const double x0 = map.origin().x + col * cs;
      const double y1 = map.origin().y + (row + 1) * cs;
      svg += "<rect x=\"" + sx(x0) + "\" y=\"" + sy(y1) + "\" width=\"" + num((end - col) * cs * k) + "\" height=\"" +
             num(cs * k) + "\" fill=\"" + hex(class_color(cls)) + "\"/>\n";
      col = end;
    }
  }
  svg += "</g>\n";

  auto polyline = [&](const std::vector<Vec2>& pts, const char* color, double stroke) {
    if (pts.size() < 2) return std::string{};
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + num(stroke) +
                    "\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + sx(pts[i].x) + "," + sy(pts[i].y);
    return s + "\"/>\n";
  };

  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& log = logs[i];
    svg += "<g id=\"episode-" + std::to_string(i) + "\" data-route=\"" + xml_escape(log.start) + "-" +
           xml_escape(log.goal) + "\" data-outcome=\"" + xml_escape(log.outcome) + "\">\n";
    svg += polyline(log.plan, kPlanColor, 2.0);
    for (const auto& w : log.waypoints) {
      svg += "<circle cx=\"" + sx(w.x) + "\" cy=\"" + sy(w.y) + "\" r=\"" + num(1.5 * k) + "\" fill=\"" + kWaypointColor +
             "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
    }
    svg += polyline(log.trajectory, kTrajectoryColor, 1.5);
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace vg
