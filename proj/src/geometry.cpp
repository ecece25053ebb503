#include "vg/geometry.hpp"

#include <algorithm>
#include <limits>

namespace vg {

namespace {

// Parameter in [0, 1] of the closest point on segment ab to p.
double segment_param(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return 0.0;
  return std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
}

}  // namespace

double polyline_length(std::span<const Vec2> pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

double distance_to_segment(Vec2 a, Vec2 b, Vec2 p) {
  const double u = segment_param(a, b, p);
  return distance(a + (b - a) * u, p);
}

PolylineProjection project_onto_polyline(std::span<const Vec2> pts, Vec2 p) {
  PolylineProjection best;
  if (pts.empty()) return best;
  best.point = pts.front();
  best.distance = distance(pts.front(), p);
  if (pts.size() == 1) return best;

  best.distance = std::numeric_limits<double>::infinity();
  double arc_start = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec2 a = pts[i - 1];
    const Vec2 b = pts[i];
    const double seg_len = distance(a, b);
    const double u = segment_param(a, b, p);
    const Vec2 q = a + (b - a) * u;
    const double d = distance(q, p);
    if (d < best.distance) {
      best.distance = d;
      best.point = q;
      best.arc_length = arc_start + u * seg_len;
      best.segment = i - 1;
    }
    arc_start += seg_len;
  }
  return best;
}

double distance_to_polyline(std::span<const Vec2> pts, Vec2 p) {
  return project_onto_polyline(pts, p).distance;
}

Vec2 point_at_arc_length(std::span<const Vec2> pts, double s) {
  if (pts.empty()) return {};
  if (s <= 0.0) return pts.front();
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg_len = distance(pts[i - 1], pts[i]);
    if (acc + seg_len >= s && seg_len > 0.0) {
      const double u = (s - acc) / seg_len;
      return pts[i - 1] + (pts[i] - pts[i - 1]) * u;
    }
    acc += seg_len;
  }
  return pts.back();
}

Polyline polyline_slice(std::span<const Vec2> pts, double s0, double s1) {
  Polyline out;
  if (pts.empty()) return out;
  const double length = polyline_length(pts);
  s0 = std::clamp(s0, 0.0, length);
  s1 = std::clamp(s1, s0, length);
  out.push_back(point_at_arc_length(pts, s0));
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    acc += distance(pts[i - 1], pts[i]);
    if (acc > s0 && acc < s1) out.push_back(pts[i]);
  }
  out.push_back(point_at_arc_length(pts, s1));
  return out;
}

}  // namespace vg
