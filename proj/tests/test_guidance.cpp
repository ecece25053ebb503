#include <gtest/gtest.h>

#include "helpers.hpp"
#include "vg/guidance.hpp"
#include "vg/planner.hpp"

using namespace vg;
using vg::test::error_code;

namespace {

WaypointSet straight_set(int n, double spacing = 10.0) {
  const PlannedPath p{{{0, 0}, {n * spacing, 0}}, n * spacing, {}};
  return extract_waypoints(p, spacing);
}

AgentState at(Vec2 p, double heading = 0.0) {
  AgentState a;
  a.position = p;
  a.heading = heading;
  return a;
}

}  // namespace

TEST(NextWaypoint, AtStartIsFirst) {
  const auto w = straight_set(4);
  EXPECT_EQ(next_waypoint_index(at({0, 0}), w), 0u);
}

TEST(NextWaypoint, AllButLastCollectedIsGoal) {
  auto w = straight_set(4);
  for (std::size_t i = 0; i + 1 < w.waypoints.size(); ++i) w.waypoints[i].collected = true;
  EXPECT_EQ(next_waypoint(at({0, 0}), w), (Vec2{40, 0}));
}

TEST(NextWaypoint, UsesArcLengthProjection) {
  const auto w = straight_set(4);
  // Between waypoints 2 (20 m) and 3 (30 m), displaced off the path.
  EXPECT_EQ(next_waypoint_index(at({24, 3}), w), 2u);
}

TEST(NextWaypoint, FallsBackToMissedWaypointBehind) {
  auto w = straight_set(3);
  w.waypoints[2].collected = true;
  EXPECT_EQ(next_waypoint_index(at({25, 0}), w), 1u);
}

TEST(NextWaypoint, AllCollectedThrows) {
  auto w = straight_set(2);
  for (auto& wp : w.waypoints) wp.collected = true;
  EXPECT_EQ(error_code([&] { next_waypoint_index(at({0, 0}), w); }), errc::kAllCollected);
}

TEST(HybridVector, DeadAhead) {
  WaypointSet w;
  w.path = {{0, 0}, {5, 0}};
  w.waypoints = {{{5, 0}, 5.0, false}};
  const auto v = hybrid_vector(at({0, 0}), w);
  EXPECT_DOUBLE_EQ(v.r, 5.0);
  EXPECT_DOUBLE_EQ(v.theta_norm, 0.0);
}

TEST(HybridVector, LeftIsNegativeHalf) {
  WaypointSet w;
  w.path = {{0, 0}, {0, 5}};
  w.waypoints = {{{0, 5}, 5.0, false}};
  const auto left = hybrid_vector(at({0, 0}), w);
  EXPECT_DOUBLE_EQ(left.theta_norm, -0.5);
  w.path = {{0, 0}, {0, -5}};
  w.waypoints = {{{0, -5}, 5.0, false}};
  EXPECT_DOUBLE_EQ(hybrid_vector(at({0, 0}), w).theta_norm, 0.5);
}

TEST(HybridVector, AtWaypointIsZero) {
  WaypointSet w;
  w.path = {{0, 0}};
  w.waypoints = {{{0, 0}, 0.0, false}};
  EXPECT_EQ(hybrid_vector(at({0, 0}, 77.0), w), (HybridVector{0.0, 0.0}));
}

TEST(HybridVector, ThetaNormInRange) {
  WaypointSet w;
  w.path = {{0, 0}, {-5, 0}};
  w.waypoints = {{{-5, 0}, 5.0, false}};
  const auto v = hybrid_vector(at({0, 0}), w);
  EXPECT_GE(v.theta_norm, -1.0);
  EXPECT_LT(v.theta_norm, 1.0);
  EXPECT_DOUBLE_EQ(std::abs(v.theta_norm), 1.0);
}

TEST(Collection, WithinRadius) {
  const auto w = straight_set(3);
  const auto u = update_collection(at({10.1, 0}), w, 2.0);
  EXPECT_EQ(u.newly_collected, 1);
  EXPECT_TRUE(u.waypoints.waypoints[0].collected);
  EXPECT_FALSE(u.waypoints.waypoints[1].collected);
}

TEST(Collection, FarFromAllLeavesSetUnchanged) {
  const auto w = straight_set(3);
  const auto u = update_collection(at({0, 50}), w, 2.0);
  EXPECT_EQ(u.newly_collected, 0);
  EXPECT_EQ(u.waypoints.waypoints, w.waypoints);
}

TEST(Collection, TwoAtOnce) {
  const auto w = straight_set(2, 3.0);  // waypoints at 3 m and 6 m
  const auto u = update_collection(at({4.5, 0}), w, 2.0);
  EXPECT_EQ(u.newly_collected, 2);
  EXPECT_EQ(u.waypoints.collected_count(), 2u);
}

TEST(Collection, AlreadyCollectedNotRecounted) {
  auto w = straight_set(2);
  w.waypoints[0].collected = true;
  EXPECT_EQ(update_collection(at({10, 0}), w, 2.0).newly_collected, 0);
}

TEST(Geometry, PerScheme) {
  const PlannedPath p{{{0, 0}, {30, 0}}, 30.0, {}};
  auto w = extract_waypoints(p, 10.0);
  EXPECT_TRUE(geometry_for(GuidanceScheme::HybridVector, p, w).empty());
  const auto g = geometry_for(GuidanceScheme::Waypoints, p, w);
  ASSERT_EQ(g.spheres.size(), 3u);
  EXPECT_EQ(g.spheres[0].radius, 0.5);
  EXPECT_FALSE(g.path_polyline);
  w.waypoints[0].collected = true;
  EXPECT_EQ(geometry_for(GuidanceScheme::Waypoints, p, w).spheres.size(), 2u);
  const auto path = geometry_for(GuidanceScheme::Path, p, w);
  ASSERT_TRUE(path.path_polyline);
  EXPECT_EQ(*path.path_polyline, p.points);
  EXPECT_TRUE(path.spheres.empty());
}

TEST(Geometry, PathWindowShowsAheadOnly) {
  const PlannedPath p{{{0, 0}, {30, 0}}, 30.0, {}};
  const auto w = extract_waypoints(p, 10.0);
  GeometryOptions opt;
  opt.path_window = 8.0;
  const AgentState a = at({5, 1});
  const auto g = geometry_for(GuidanceScheme::Path, p, w, opt, &a);
  ASSERT_TRUE(g.path_polyline);
  EXPECT_EQ(g.path_polyline->front(), (Vec2{5, 0}));
  EXPECT_EQ(g.path_polyline->back(), (Vec2{13, 0}));
}

TEST(Scheme, NamesRoundTrip) {
  for (auto s : {GuidanceScheme::Path, GuidanceScheme::Waypoints, GuidanceScheme::HybridVector}) {
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  }
  EXPECT_FALSE(parse_scheme("arrows"));
}
