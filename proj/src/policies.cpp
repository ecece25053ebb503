#include "vg/policies.hpp"

#include <cmath>

#include "vg/error.hpp"

namespace vg {

Action steer_toward(const AgentState& agent, Vec2 target, const SteeringParams& params) {
  const double error = signed_bearing_error(agent, target);
  const double accel = params.alpha * params.kappa;
  const double settled = error - agent.omega * std::abs(agent.omega) / (2.0 * accel);
  if (std::abs(settled) <= params.deadband) return Action::noop();
  return Action::turn(settled > 0.0 ? params.alpha : -params.alpha);
}

Action pure_pursuit_path(const AgentState& agent, const PlannedPath& path, double lookahead,
                         const SteeringParams& params) {
  if (path.points.empty()) return Action::noop();
  const double s = project_onto_polyline(path.points, agent.position).arc_length;
  const Vec2 target = point_at_arc_length(path.points, s + lookahead);
  return steer_toward(agent, target, params);
}

Action waypoint_greedy(const AgentState& agent, const WaypointSet& w, double lookahead, const SteeringParams& params) {
  if (w.remaining() == 0) return Action::noop();
  // Chain agent -> next waypoint -> later uncollected waypoints. Beyond the
  // lookahead this aims straight at the next waypoint; closer in, the aim
  // slides onto the following leg so the turn starts before the waypoint.
  Polyline chain{agent.position};
  for (std::size_t k = next_waypoint_index(agent, w); k < w.waypoints.size(); ++k) {
    if (!w.waypoints[k].collected) chain.push_back(w.waypoints[k].position);
  }
  return steer_toward(agent, point_at_arc_length(chain, lookahead), params);
}

Action hybrid_follower(const HybridVector& vec, double deadband_deg, double alpha) {
  if (std::abs(vec.theta_norm) <= deadband_deg / 180.0) return Action::noop();
  return Action::turn(vec.theta_norm > 0.0 ? alpha : -alpha);
}

Action PursuitPolicy::act(const PolicyInput& in) {
  if (!in.agent || !in.path) return Action::noop();
  return pure_pursuit_path(*in.agent, *in.path, lookahead_, params_);
}

Action GreedyPolicy::act(const PolicyInput& in) {
  if (!in.agent || !in.waypoints) return Action::noop();
  return waypoint_greedy(*in.agent, *in.waypoints, lookahead_, params_);
}

Action HybridPolicy::act(const PolicyInput& in) {
  if (!in.hybrid) return Action::noop();
  return hybrid_follower(*in.hybrid, deadband_);
}

Action RandomPolicy::act(const PolicyInput&) {
  // Modulo of a 64-bit draw keeps the stream identical across standard libraries.
  return kStandardActions[rng_() % kStandardActions.size()];
}

std::unique_ptr<Policy> make_policy(const std::string& name, std::uint64_t seed) {
  if (name == "pursuit") return std::make_unique<PursuitPolicy>();
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  if (name == "hybrid") return std::make_unique<HybridPolicy>();
  if (name == "random") return std::make_unique<RandomPolicy>(seed);
  throw Error(errc::kUsage, "unknown policy '" + name + "' (expected pursuit|greedy|hybrid|random|remote)");
}

}  // namespace vg
