#pragma once

#include <optional>
#include <string_view>

#include "vg/guidance.hpp"

namespace vg {

enum class TerminalEvent { None, ReachedGoal, Collision, OutOfBound, Timeout };

std::string_view event_name(TerminalEvent e);

struct RewardParams {
  double waypoint_reward = 5.0;
  double line_max = 6.0;
  double line_floor = 0.4;
  double off_line = -0.2;
  double goal = 10.0;
  double failure = -10.0;
};

struct RewardTerms {
  double r_nav = 0.0;
  double r_goal = 0.0;
  double total = 0.0;

  static RewardTerms of(double nav, double goal) { return {nav, goal, nav + goal}; }
  bool operator==(const RewardTerms&) const = default;
};

/// Navigation-following reward. Path: clamp(6 - d', 0.4, 6) on the line, -0.2
/// off it. Waypoints and HybridVector: 5 per waypoint collected this step.
double nav_reward(GuidanceScheme scheme, double d_prime, int newly_collected, bool on_line,
                  const RewardParams& params = {});

/// +10 on reaching the goal, -10 on collision, out-of-bound or timeout, else 0.
double goal_reward(TerminalEvent event, const RewardParams& params = {});

}  // namespace vg
