#include "vg/metrics.hpp"

#include <algorithm>
#include <vector>

#include "vg/error.hpp"

namespace vg {

double spl(std::span<const SplSample> samples) {
  if (samples.empty()) throw Error(errc::kEmptySet, "spl needs at least one episode");
  double sum = 0.0;
  for (const auto& s : samples) {
    if (s.success) sum += s.shortest / std::max(s.shortest, s.taken);
  }
  return sum / static_cast<double>(samples.size());
}

double spl(std::span<const EpisodeResult> results) {
  std::vector<SplSample> samples;
  samples.reserve(results.size());
  for (const auto& r : results) samples.push_back({r.outcome == Outcome::Success, r.shortest_length, r.path_length});
  return spl(samples);
}

double line_following_rate(std::span<const Vec2> trajectory, std::span<const Vec2> path, double corridor) {
  if (trajectory.empty() || path.empty()) return 0.0;
  std::size_t inside = 0;
  for (const auto& p : trajectory) inside += distance_to_polyline(path, p) <= corridor ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(trajectory.size());
}

double waypoint_collecting_rate(std::span<const EpisodeResult> results) {
  long long collected = 0, total = 0;
  for (const auto& r : results) {
    collected += r.waypoints_collected;
    total += r.waypoints_total;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(collected) / static_cast<double>(total);
}

MetricsReport aggregate(std::span<const EpisodeResult> results) {
  if (results.empty()) throw Error(errc::kEmptySet, "cannot aggregate an empty result set");
  MetricsReport m;
  m.episodes = static_cast<int>(results.size());
  const double n = static_cast<double>(results.size());
  int success = 0, collision = 0, oob = 0, timeout = 0;
  double lf = 0.0;
  for (const auto& r : results) {
    switch (r.outcome) {
      case Outcome::Success: ++success; break;
      case Outcome::Collision: ++collision; break;
      case Outcome::OutOfBound: ++oob; break;
      case Outcome::Timeout: ++timeout; break;
    }
    lf += r.line_following;
  }
  m.spl = spl(results);
  m.success_rate = success / n;
  m.collision_rate = collision / n;
  m.oob_rate = oob / n;
  m.timeout_rate = timeout / n;
  m.line_following_rate = lf / n;
  m.waypoint_collecting_rate = waypoint_collecting_rate(results);
  return m;
}

}  // namespace vg
