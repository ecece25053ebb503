#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "vg/episode.hpp"
#include "vg/metrics.hpp"
#include "vg/policies.hpp"
#include "vg/reward.hpp"

using namespace vg;
using vg::test::ascii_map;
using vg::test::error_code;

namespace {

// A straight east-west road, 3 cells wide, framed by sidewalk.
CityMap straight_road(int cells, double cell = 4.0, std::vector<Pedestrian> peds = {}) {
  const std::string side(cells, 's');
  std::string road(cells, '.');
  road.front() = road.back() = 's';
  return ascii_map({side, road, road, road, side}, cell,
                   {{"A", {cell * 1.5, cell * 2.5}}, {"B", {cell * (cells - 1.5), cell * 2.5}}, {"M", {cell * 5.5, cell * 2.5}}},
                   std::move(peds), "straight");
}

EpisodeConfig route(std::string from, std::string to) {
  EpisodeConfig cfg;
  cfg.start_label = std::move(from);
  cfg.goal_label = std::move(to);
  cfg.pedestrians = false;
  return cfg;
}

class Noop final : public Policy {
 public:
  Action act(const PolicyInput&) override { return Action::noop(); }
  std::string name() const override { return "noop"; }
};

}  // namespace

TEST(Reward, PathScheme) {
  EXPECT_EQ(nav_reward(GuidanceScheme::Path, 0.0, 0, true), 6.0);
  EXPECT_NEAR(nav_reward(GuidanceScheme::Path, 5.6, 0, true), 0.4, 1e-12);
  EXPECT_EQ(nav_reward(GuidanceScheme::Path, 7.0, 0, true), 0.4);
  EXPECT_EQ(nav_reward(GuidanceScheme::Path, 1.0, 0, false), -0.2);
  EXPECT_EQ(nav_reward(GuidanceScheme::Path, 2.5, 3, true), 3.5);  // waypoints do not count here
}

TEST(Reward, WaypointSchemes) {
  EXPECT_EQ(nav_reward(GuidanceScheme::Waypoints, 9.0, 1, false), 5.0);
  EXPECT_EQ(nav_reward(GuidanceScheme::Waypoints, 0.0, 2, true), 10.0);
  EXPECT_EQ(nav_reward(GuidanceScheme::Waypoints, 0.0, 0, true), 0.0);
  EXPECT_EQ(nav_reward(GuidanceScheme::HybridVector, 0.0, 1, true), 5.0);
}

TEST(Reward, Terminal) {
  EXPECT_EQ(goal_reward(TerminalEvent::ReachedGoal), 10.0);
  EXPECT_EQ(goal_reward(TerminalEvent::Collision), -10.0);
  EXPECT_EQ(goal_reward(TerminalEvent::OutOfBound), -10.0);
  EXPECT_EQ(goal_reward(TerminalEvent::Timeout), -10.0);
  EXPECT_EQ(goal_reward(TerminalEvent::None), 0.0);
  const auto r = RewardTerms::of(6.0, -10.0);
  EXPECT_EQ(r.total, -4.0);
}

TEST(Termination, Cases) {
  const auto map = straight_road(20);
  const Vec2 goal{70, 10};
  AgentState a;
  a.position = goal;
  const TerminationParams p{100, 2.0, 0.5};
  EXPECT_EQ(check_termination(map, a, {}, goal, p), TerminalEvent::ReachedGoal);
  a.position = {30, 10};
  EXPECT_EQ(check_termination(map, a, {}, goal, p), TerminalEvent::None);
  a.position = {30, 2};  // sidewalk
  EXPECT_EQ(check_termination(map, a, {}, goal, p), TerminalEvent::OutOfBound);
  a.position = {30, -5};  // outside the map
  EXPECT_EQ(check_termination(map, a, {}, goal, p), TerminalEvent::OutOfBound);
  a.position = {30, 10};
  a.t = 100;
  EXPECT_EQ(check_termination(map, a, {}, goal, p), TerminalEvent::Timeout);
  const std::vector<PedestrianState> peds{{{30.5, 10}, 0.3}};
  EXPECT_EQ(check_termination(map, a, peds, goal, p), TerminalEvent::Collision);
  // Goal takes precedence over everything else.
  a.position = goal;
  const std::vector<PedestrianState> at_goal{{goal, 0.3}};
  EXPECT_EQ(check_termination(map, a, at_goal, goal, p), TerminalEvent::ReachedGoal);
}

TEST(Termination, BuildingIsCollision) {
  const auto map = ascii_map({".....#"});
  AgentState a;
  a.position = {5.5, 0.5};
  EXPECT_EQ(check_termination(map, a, {}, {0.5, 0.5}, {}), TerminalEvent::Collision);
}

TEST(Episode, StationaryPolicyTimesOut) {
  const auto map = straight_road(300);  // 1200 m: the far end is out of reach in 100 steps
  auto cfg = route("A", "B");
  cfg.horizon = 100;
  Noop policy;
  const auto r = run_episode(policy, cfg, map);
  EXPECT_EQ(r.outcome, Outcome::Timeout);
  ASSERT_EQ(r.steps.size(), 100u);
  EXPECT_EQ(r.steps.back().reward.r_goal, -10.0);
  EXPECT_EQ(r.steps.back().event, TerminalEvent::Timeout);
  EXPECT_NEAR(r.path_length, 60.0, 1e-9);
}

TEST(Episode, PursuitOnStraightRouteSucceeds) {
  const auto map = straight_road(40);
  PursuitPolicy policy;
  const auto r = run_episode(policy, route("A", "B"), map);
  EXPECT_EQ(r.outcome, Outcome::Success);
  EXPECT_EQ(r.line_following, 1.0);
  EXPECT_EQ(r.waypoints_collected, r.waypoints_total);
  EXPECT_EQ(r.steps.back().reward.r_goal, 10.0);
  // Every on-line step earns clamp(6 - d', 0.4, 6); here d' = 0.
  double sum = 0.0;
  for (const auto& s : r.steps) {
    EXPECT_EQ(s.reward.total, s.reward.r_nav + s.reward.r_goal);
    EXPECT_NEAR(s.reward.r_nav, 6.0, 1e-9);
    sum += s.reward.total;
  }
  EXPECT_DOUBLE_EQ(r.cumulative_reward, sum);
}

TEST(Episode, SpawnInsidePedestrianCollidesAtFirstStep) {
  const Pedestrian ped{{{6.6, 10.0}, {6.6, 10.0}}, false, 0.0, 0.3, 0.0};
  const auto map = straight_road(40, 4.0, {ped});
  auto cfg = route("A", "B");
  cfg.pedestrians = true;
  Noop policy;
  const auto r = run_episode(policy, cfg, map);
  EXPECT_EQ(r.outcome, Outcome::Collision);
  EXPECT_EQ(r.steps.size(), 1u);
}

TEST(Episode, WaypointSchemeRewardsCollection) {
  const auto map = straight_road(40);
  auto cfg = route("A", "B");
  cfg.scheme = GuidanceScheme::Waypoints;
  GreedyPolicy policy;
  const auto r = run_episode(policy, cfg, map);
  EXPECT_EQ(r.outcome, Outcome::Success);
  double nav = 0.0;
  for (const auto& s : r.steps) nav += s.reward.r_nav;
  EXPECT_DOUBLE_EQ(nav, 5.0 * r.waypoints_collected);
}

TEST(Episode, StepAfterTerminalIsUsageError) {
  const auto map = straight_road(40);
  auto cfg = route("A", "B");
  cfg.horizon = 1;
  Episode ep(map, cfg, false);
  ep.step(Action::noop());
  ASSERT_TRUE(ep.terminal());
  EXPECT_EQ(error_code([&] { ep.step(Action::noop()); }), errc::kUsage);
}

TEST(Episode, UnknownLabelRejected) {
  const auto map = straight_road(40);
  EXPECT_EQ(error_code([&] { Episode(map, route("A", "Z"), false); }), errc::kUnknownLabel);
}

TEST(Episode, InvalidConfigRejected) {
  const auto map = straight_road(40);
  auto cfg = route("A", "B");
  cfg.horizon = 0;
  EXPECT_EQ(error_code([&] { Episode(map, cfg, false); }), errc::kInvariantViolation);
}

TEST(Episode, DeterministicWithPedestrians) {
  const auto map = vg::test::city8();
  EpisodeConfig cfg = route("A", "P");
  cfg.pedestrians = true;
  cfg.seed = 11;
  cfg.horizon = 400;
  RandomPolicy p1(3), p2(3);
  const auto a = run_episode(p1, cfg, map);
  const auto b = run_episode(p2, cfg, map);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.outcome, b.outcome);
}

TEST(Episode, RealTimePlanningReplans) {
  const auto map = vg::test::city8();
  auto cfg = route("A", "P");
  cfg.plan_mode = PlanMode::real_time(1);
  PursuitPolicy policy;
  const auto r = run_episode(policy, cfg, map);
  EXPECT_EQ(r.outcome, Outcome::Success);
  EXPECT_GT(r.replans, 0);
}

TEST(Episode, ObservationRendersOnlyForPixelPolicies) {
  const auto map = straight_road(40);
  Episode ep(map, route("A", "B"), true);
  const auto& f = ep.observation().frames.back();
  EXPECT_GT(f.count(SemanticClass::Road), 0u);
  EXPECT_GT(f.count(SemanticClass::GuidancePath), 0u);
  Episode blind(map, route("A", "B"), false);
  EXPECT_FALSE(blind.renders());
  EXPECT_TRUE(ep.renders());
}

TEST(Metrics, SplHandCases) {
  const std::vector<SplSample> equal{{true, 10.0, 10.0}};
  EXPECT_EQ(spl(equal), 1.0);
  const std::vector<SplSample> twice{{true, 10.0, 20.0}};
  EXPECT_EQ(spl(twice), 0.5);
  const std::vector<SplSample> failed{{false, 10.0, 10.0}};
  EXPECT_EQ(spl(failed), 0.0);
  const std::vector<SplSample> shorter{{true, 10.0, 8.0}};  // max(l, p) caps at 1
  EXPECT_EQ(spl(shorter), 1.0);
  EXPECT_EQ(error_code([] { spl(std::span<const SplSample>{}); }), errc::kEmptySet);
}

TEST(Metrics, SplNeverExceedsSuccessRate) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> n(1, 40);
  std::uniform_real_distribution<double> len(1.0, 500.0), stretch(0.5, 3.0);
  std::bernoulli_distribution ok(0.6);
  for (int set = 0; set < 1000; ++set) {
    std::vector<SplSample> s(n(rng));
    int succ = 0;
    for (auto& x : s) {
      x.success = ok(rng);
      x.shortest = len(rng);
      x.taken = x.shortest * stretch(rng);
      succ += x.success ? 1 : 0;
    }
    const double sr = static_cast<double>(succ) / s.size();
    EXPECT_LE(spl(s), sr + 1e-15);
    EXPECT_GE(spl(s), 0.0);
  }
}

TEST(Metrics, LineFollowingRate) {
  const Polyline path{{0, 0}, {10, 0}};
  const std::vector<Vec2> on{{0, 0}, {5, 0}, {10, 0}};
  EXPECT_EQ(line_following_rate(on, path, 2.0), 1.0);
  const std::vector<Vec2> off{{0, 5}, {5, -3}};
  EXPECT_EQ(line_following_rate(off, path, 2.0), 0.0);
  const std::vector<Vec2> half{{0, 1}, {5, 1.9}, {5, 2.1}, {9, 4}};
  EXPECT_EQ(line_following_rate(half, path, 2.0), 0.5);
}

TEST(Metrics, WaypointCollectingRateAndAggregate) {
  EpisodeResult a;
  a.outcome = Outcome::Success;
  a.waypoints_collected = 3;
  a.waypoints_total = 4;
  a.shortest_length = 10;
  a.path_length = 10;
  a.line_following = 1.0;
  std::vector<EpisodeResult> one{a};
  EXPECT_EQ(waypoint_collecting_rate(one), 0.75);
  EpisodeResult b = a;
  b.outcome = Outcome::Collision;
  b.waypoints_collected = 0;
  b.line_following = 0.5;
  const std::vector<EpisodeResult> two{a, b};
  const auto m = aggregate(two);
  EXPECT_EQ(m.episodes, 2);
  EXPECT_EQ(m.success_rate, 0.5);
  EXPECT_EQ(m.collision_rate, 0.5);
  EXPECT_EQ(m.oob_rate, 0.0);
  EXPECT_EQ(m.timeout_rate, 0.0);
  EXPECT_EQ(m.spl, 0.5);
  EXPECT_EQ(m.line_following_rate, 0.75);
  EXPECT_EQ(m.waypoint_collecting_rate, 3.0 / 8.0);
  EXPECT_EQ(error_code([] { aggregate(std::span<const EpisodeResult>{}); }), errc::kEmptySet);
  std::vector<EpisodeResult> all(3, a);
  for (auto& r : all) r.waypoints_collected = r.waypoints_total;
  const auto ma = aggregate(all);
  EXPECT_EQ(ma.success_rate, 1.0);
  EXPECT_EQ(ma.collision_rate, 0.0);
  EXPECT_EQ(ma.waypoint_collecting_rate, 1.0);
}
