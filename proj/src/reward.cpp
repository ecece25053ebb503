#include "vg/reward.hpp"

#include <algorithm>

namespace vg {

std::string_view event_name(TerminalEvent e) {
  switch (e) {
    case TerminalEvent::None: return "none";
    case TerminalEvent::ReachedGoal: return "reached_goal";
    case TerminalEvent::Collision: return "collision";
    case TerminalEvent::OutOfBound: return "out_of_bound";
    case TerminalEvent::Timeout: return "timeout";
  }
  return "none";
}

double nav_reward(GuidanceScheme scheme, double d_prime, int newly_collected, bool on_line,
                  const RewardParams& params) {
  if (scheme == GuidanceScheme::Path) {
    if (!on_line) return params.off_line;
    return std::clamp(params.line_max - d_prime, params.line_floor, params.line_max);
  }
  return params.waypoint_reward * newly_collected;
}

double goal_reward(TerminalEvent event, const RewardParams& params) {
  switch (event) {
    case TerminalEvent::ReachedGoal: return params.goal;
    case TerminalEvent::Collision:
    case TerminalEvent::OutOfBound:
    case TerminalEvent::Timeout: return params.failure;
    case TerminalEvent::None: return 0.0;
  }
  return 0.0;
}

}  // namespace vg
