#pragma once

#include <span>

#include "vg/episode.hpp"

namespace vg {

struct MetricsReport {
  int episodes = 0;
  double spl = 0.0;
  double success_rate = 0.0;
  double line_following_rate = 0.0;
  double waypoint_collecting_rate = 0.0;
  double collision_rate = 0.0;
  double oob_rate = 0.0;
  double timeout_rate = 0.0;
};

/// One term of the path-length-weighted success average.
struct SplSample {
  bool success = false;
  double shortest = 0.0;  // l_i > 0
  double taken = 0.0;     // p_i
};

/// (1/N) * sum S_i * l_i / max(l_i, p_i). Throws EmptyResultSet when N = 0.
double spl(std::span<const SplSample> samples);
double spl(std::span<const EpisodeResult> results);

/// Fraction of trajectory samples within corridor meters of the path.
double line_following_rate(std::span<const Vec2> trajectory, std::span<const Vec2> path, double corridor);

/// Collected over total waypoints, pooled across episodes.
double waypoint_collecting_rate(std::span<const EpisodeResult> results);

/// Throws EmptyResultSet when results is empty.
MetricsReport aggregate(std::span<const EpisodeResult> results);

}  // namespace vg
