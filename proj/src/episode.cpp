#include "vg/episode.hpp"

#include <random>

#include "vg/error.hpp"
#include "vg/metrics.hpp"

namespace vg {

void EpisodeConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& what) {
    throw Error(errc::kInvariantViolation, "config." + field + ": " + what);
  };
  if (horizon < 1) bad("horizon", "must be >= 1");
  if (!(goal_radius > 0.0)) bad("goal_radius", "must be > 0");
  if (!(collision_radius > 0.0)) bad("collision_radius", "must be > 0");
  if (!(collection_radius > 0.0)) bad("collection_radius", "must be > 0");
  if (!(on_line_threshold > 0.0)) bad("on_line_threshold", "must be > 0");
  if (!(waypoint_spacing > 0.0)) bad("waypoint_spacing", "must be > 0");
  if (!(corridor_width > 0.0)) bad("corridor_width", "must be > 0");
  if (!(agent_speed > 0.0)) bad("agent_speed", "must be > 0");
  if (!(dynamics.dt > 0.0)) bad("dynamics.dt", "must be > 0");
  if (plan_mode.kind == PlanMode::Kind::RealTime && plan_mode.period < 1) bad("plan_mode.period", "must be >= 1");
  if (!(pedestrian_speed_scale >= 0.0)) bad("pedestrian_speed_scale", "must be >= 0");
  camera.validate();
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Collision: return "collision";
    case Outcome::OutOfBound: return "out_of_bound";
    case Outcome::Timeout: return "timeout";
  }
  return "timeout";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (auto o : {Outcome::Success, Outcome::Collision, Outcome::OutOfBound, Outcome::Timeout}) {
    if (outcome_name(o) == name) return o;
  }
  return std::nullopt;
}

TerminalEvent check_termination(const CityMap& map, const AgentState& agent, std::span<const PedestrianState> peds,
                                Vec2 goal, const TerminationParams& params) {
  if (distance(agent.position, goal) <= params.goal_radius) return TerminalEvent::ReachedGoal;
  const SemanticClass cls = query_class(map, agent.position);
  if (cls == SemanticClass::Building) return TerminalEvent::Collision;
  for (const auto& p : peds) {
    if (distance(agent.position, p.position) <= params.collision_radius + p.radius) return TerminalEvent::Collision;
  }
  if (cls == SemanticClass::Sidewalk || cls == SemanticClass::Void) return TerminalEvent::OutOfBound;
  if (agent.t >= params.horizon) return TerminalEvent::Timeout;
  return TerminalEvent::None;
}

namespace {

Outcome outcome_for(TerminalEvent e) {
  switch (e) {
    case TerminalEvent::ReachedGoal: return Outcome::Success;
    case TerminalEvent::Collision: return Outcome::Collision;
    case TerminalEvent::OutOfBound: return Outcome::OutOfBound;
    default: return Outcome::Timeout;
  }
}

}  // namespace

Episode::Episode(const CityMap& map, EpisodeConfig config, bool render)
    : map_(map), config_(std::move(config)), render_(render) {
  config_.validate();
  start_ = map_.named_point(config_.start_label);
  goal_ = map_.named_point(config_.goal_label);

  if (config_.pedestrians) {
    std::mt19937_64 rng(config_.seed);
    for (auto ped : map_.pedestrians()) {
      Polyline loop = ped.path;
      if (ped.closed) loop.push_back(loop.front());
      const double length = polyline_length(loop);
      // Seeded phase jitter; 53 random bits mapped onto [0, 1).
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      ped.phase += u * (ped.closed ? length : 2.0 * length);
      ped.speed *= config_.pedestrian_speed_scale;
      pedestrians_.push_back(std::move(ped));
    }
  }

  // The initial S->D plan fixes the shortest length, the waypoint set and the
  // reference line for the line-following metric in both planning modes.
  auto initial = std::make_shared<const PlannedPath>(plan(map_, start_, goal_));
  waypoints_ = extract_waypoints(*initial, config_.waypoint_spacing);

  agent_.position = start_;
  agent_.speed = config_.agent_speed;
  const Vec2 aim = initial->points.size() > 1 ? initial->points[1] : goal_;
  agent_.heading = aim == start_ ? 0.0 : wrap_deg(bearing_deg(start_, aim));

  path_ = initial;
  if (config_.plan_mode.kind == PlanMode::Kind::RealTime) {
    path_ = plan_for_step(config_.plan_mode, map_, agent_, start_, goal_, nullptr);
  }

  result_.start_label = config_.start_label;
  result_.goal_label = config_.goal_label;
  result_.scheme = config_.scheme;
  result_.plan_mode = config_.plan_mode;
  result_.seed = config_.seed;
  result_.shortest_length = initial->length;
  result_.initial_plan = initial->points;
  result_.waypoints_total = static_cast<int>(waypoints_.waypoints.size());
  for (const auto& w : waypoints_.waypoints) result_.waypoint_positions.push_back(w.position);
  result_.trajectory.push_back(agent_.position);

  render_observation(true);
}

std::optional<HybridVector> Episode::hybrid() const {
  if (config_.scheme != GuidanceScheme::HybridVector || waypoints_.remaining() == 0) return std::nullopt;
  return hybrid_vector(agent_, waypoints_);
}

std::vector<PedestrianState> Episode::pedestrians_now() const {
  std::vector<PedestrianState> out;
  const double t = agent_.t * config_.dynamics.dt;
  for (const auto& p : pedestrians_) out.push_back({pedestrian_pose(p, t), p.radius});
  return out;
}

GuidanceGeometry Episode::geometry() const {
  return geometry_for(config_.scheme, *path_, waypoints_, config_.geometry, &agent_);
}

void Episode::render_observation(bool reset) {
  if (!render_) return;
  std::vector<Vec2> peds;
  for (const auto& p : pedestrians_now()) peds.push_back(p.position);
  const SegFrame f = render_frame(map_, peds, agent_, geometry(), config_.camera, config_.render);
  observation_ = reset ? ObservationStack::reset(f) : observation_.push(f);
}

Episode::StepInfo Episode::step(const Action& a) {
  if (terminal()) throw Error(errc::kUsage, "episode already terminated");
  const PathPtr shown = path_;

  agent_ = step_dynamics(agent_, a, config_.dynamics);
  result_.trajectory.push_back(agent_.position);
  result_.path_length += distance(result_.trajectory[result_.trajectory.size() - 2], agent_.position);

  if (config_.plan_mode.kind == PlanMode::Kind::RealTime) {
    try {
      const PathPtr next = plan_for_step(config_.plan_mode, map_, agent_, start_, goal_, path_);
      if (next != path_) ++result_.replans;
      path_ = next;
    } catch (const Error&) {
      // Off the road network: keep showing the last plan; termination follows.
    }
  }

  auto collected = update_collection(agent_, std::move(waypoints_), config_.collection_radius);
  waypoints_ = std::move(collected.waypoints);

  const double d_prime = distance_to_polyline(shown->points, agent_.position);
  const bool on_line = d_prime <= config_.on_line_threshold;
  const double r_nav = nav_reward(config_.scheme, d_prime, collected.newly_collected, on_line, config_.rewards);

  const auto peds = pedestrians_now();
  const TerminalEvent event = check_termination(
      map_, agent_, peds, goal_, {config_.horizon, config_.goal_radius, config_.collision_radius});
  const RewardTerms reward = RewardTerms::of(r_nav, goal_reward(event, config_.rewards));

  result_.cumulative_reward += reward.total;
  result_.waypoints_collected = static_cast<int>(waypoints_.collected_count());
  result_.steps.push_back({agent_.t, a, agent_, reward, collected.newly_collected, d_prime, event});

  if (event != TerminalEvent::None) {
    outcome_ = outcome_for(event);
    result_.outcome = *outcome_;
    result_.line_following = line_following_rate(result_.trajectory, result_.initial_plan, config_.corridor_width);
  }
  render_observation(false);
  return {reward, event, collected.newly_collected};
}

EpisodeResult run_episode(Policy& policy, const EpisodeConfig& config, const CityMap& map) {
  Episode ep(map, config, policy.uses_pixels());
  policy.reset(config.seed);
  RewardTerms last;
  while (!ep.terminal()) {
    PolicyInput in;
    in.observation = ep.renders() ? &ep.observation() : nullptr;
    in.agent = &ep.agent();
    in.path = &ep.path();
    in.waypoints = &ep.waypoints();
    in.hybrid = ep.hybrid();
    in.last_reward = last;
    last = ep.step(policy.act(in)).reward;
  }
  return ep.result();
}

}  // namespace vg
