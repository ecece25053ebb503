#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace vg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees to [-180, 180).
inline double wrap_deg(double deg) {
  double w = deg - 360.0 * std::floor((deg + 180.0) / 360.0);
  if (w >= 180.0) w -= 360.0;
  if (w < -180.0) w += 360.0;
  return w;
}

/// Unit vector for a heading in degrees (0 = +x, counter-clockwise positive).
inline Vec2 unit_from_heading(double heading_deg) {
  const double r = deg2rad(heading_deg);
  return {std::cos(r), std::sin(r)};
}

/// Heading in degrees of the direction a -> b.
inline double bearing_deg(Vec2 from, Vec2 to) {
  return rad2deg(std::atan2(to.y - from.y, to.x - from.x));
}

using Polyline = std::vector<Vec2>;

/// Nearest point of a polyline to a query point.
struct PolylineProjection {
  Vec2 point;
  double arc_length = 0.0;  // along the polyline from its first vertex
  double distance = 0.0;    // from the query point
  std::size_t segment = 0;
};

double polyline_length(std::span<const Vec2> pts);

/// Requires a nonempty polyline. Ties resolve to the earliest segment.
PolylineProjection project_onto_polyline(std::span<const Vec2> pts, Vec2 p);

double distance_to_polyline(std::span<const Vec2> pts, Vec2 p);

/// Point at arc length s, clamped to [0, length].
Vec2 point_at_arc_length(std::span<const Vec2> pts, double s);

double distance_to_segment(Vec2 a, Vec2 b, Vec2 p);

/// Sub-polyline between arc lengths s0 <= s1 (both clamped).
Polyline polyline_slice(std::span<const Vec2> pts, double s0, double s1);

}  // namespace vg
