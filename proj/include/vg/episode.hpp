#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vg/city_map.hpp"
#include "vg/dynamics.hpp"
#include "vg/guidance.hpp"
#include "vg/planner.hpp"
#include "vg/policies.hpp"
#include "vg/render.hpp"
#include "vg/reward.hpp"

namespace vg {

struct EpisodeConfig {
  std::string start_label;
  std::string goal_label;
  GuidanceScheme scheme = GuidanceScheme::Path;
  PlanMode plan_mode = PlanMode::one_time();
  int horizon = 3000;  // steps
  std::uint64_t seed = 0;
  bool pedestrians = true;
  double pedestrian_speed_scale = 1.0;
  double on_line_threshold = 3.0;  // m
  double goal_radius = 2.0;        // m
  double collision_radius = 0.5;   // m
  double collection_radius = 2.0;  // m
  double waypoint_spacing = 10.0;  // m
  double corridor_width = 2.0;     // m, line-following metric
  double agent_speed = 6.0;        // m/s
  DynamicsParams dynamics;
  RewardParams rewards;
  CameraModel camera;
  GeometryOptions geometry;
  RenderOptions render;

  /// Throws InvariantViolation.
  void validate() const;
};

enum class Outcome { Success, Collision, OutOfBound, Timeout };

std::string_view outcome_name(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view name);

struct PedestrianState {
  Vec2 position;
  double radius = 0.3;
};

struct TerminationParams {
  int horizon = 3000;
  double goal_radius = 2.0;
  double collision_radius = 0.5;
};

/// ReachedGoal > Collision > OutOfBound > Timeout > None.
TerminalEvent check_termination(const CityMap& map, const AgentState& agent, std::span<const PedestrianState> peds,
                                Vec2 goal, const TerminationParams& params);

struct StepLog {
  int t = 0;
  Action action;
  AgentState state;  // after the step
  RewardTerms reward;
  int newly_collected = 0;
  double d_prime = 0.0;
  TerminalEvent event = TerminalEvent::None;
};

struct EpisodeResult {
  std::string start_label;
  std::string goal_label;
  GuidanceScheme scheme = GuidanceScheme::Path;
  PlanMode plan_mode;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Timeout;
  std::vector<Vec2> trajectory;  // P_0 .. P_T
  double cumulative_reward = 0.0;
  int waypoints_collected = 0;
  int waypoints_total = 0;
  double shortest_length = 0.0;  // length of the initial S->D plan, m
  double path_length = 0.0;      // arc length of the trajectory, m
  double line_following = 0.0;   // against the initial plan
  int replans = 0;
  Polyline initial_plan;
  std::vector<Vec2> waypoint_positions;
  std::vector<StepLog> steps;
};

/// One episode as a resettable step machine. Used by run_episode and by the
/// environment server.
class Episode {
 public:
  struct StepInfo {
    RewardTerms reward;
    TerminalEvent event = TerminalEvent::None;
    int newly_collected = 0;
  };

  /// Plans S->D and renders the first observation. Throws plan and label errors.
  Episode(const CityMap& map, EpisodeConfig config, bool render = true);

  StepInfo step(const Action& a);

  bool terminal() const { return outcome_.has_value(); }
  std::optional<Outcome> outcome() const { return outcome_; }
  const AgentState& agent() const { return agent_; }
  const PlannedPath& path() const { return *path_; }
  const PathPtr& path_ptr() const { return path_; }
  const WaypointSet& waypoints() const { return waypoints_; }
  const EpisodeConfig& config() const { return config_; }
  std::optional<HybridVector> hybrid() const;
  const ObservationStack& observation() const { return observation_; }
  bool renders() const { return render_; }
  std::vector<PedestrianState> pedestrians_now() const;
  GuidanceGeometry geometry() const;
  const EpisodeResult& result() const { return result_; }

 private:
  void render_observation(bool reset);

  const CityMap& map_;
  EpisodeConfig config_;
  bool render_;
  Vec2 start_, goal_;
  std::vector<Pedestrian> pedestrians_;
  AgentState agent_;
  PathPtr path_;
  WaypointSet waypoints_;
  ObservationStack observation_;
  std::optional<Outcome> outcome_;
  EpisodeResult result_;
};

/// Loops plan -> guide -> render -> act -> dynamics -> collect -> reward ->
/// terminate. Frames are rendered only when the policy consumes pixels.
EpisodeResult run_episode(Policy& policy, const EpisodeConfig& config, const CityMap& map);

}  // namespace vg
