#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "vg/geometry.hpp"

namespace vg {

/// Kinematic state of the agent. heading follows the world convention
/// (0 deg = +x, counter-clockwise positive); omega is positive when the agent
/// turns right, so a positive TURN increases omega and bends the path clockwise.
struct AgentState {
  Vec2 position;
  double heading = 0.0;  // deg, in [-180, 180)
  double omega = 0.0;    // deg/s, positive = rightward
  double speed = 6.0;    // m/s, constant
  int t = 0;             // step index

  bool operator==(const AgentState&) const = default;
};

struct Action {
  enum class Kind { Noop, Turn };
  Kind kind = Kind::Noop;
  double alpha = 0.0;  // deg/s^2; 0 for NOOP

  static constexpr Action noop() { return {}; }
  static constexpr Action turn(double alpha) { return {Kind::Turn, alpha}; }
  bool operator==(const Action&) const = default;
};

inline constexpr double kStandardAlpha = 35.0;

/// The discrete action set used by default: NOOP, TURN(-35), TURN(+35).
inline constexpr std::array<Action, 3> kStandardActions{
    Action::noop(), Action::turn(-kStandardAlpha), Action::turn(kStandardAlpha)};

/// "NOOP", "TURN(-35)", "TURN(+35)", "TURN(12.5)", ...
std::string action_name(const Action& a);
std::optional<Action> parse_action(std::string_view name);

struct DynamicsParams {
  double kappa = 2.0;       // steering sensitivity
  double dt = 0.1;          // s
  double omega_max = 90.0;  // deg/s
};

/// One fixed step: omega += alpha*kappa*dt (clamped), then heading and
/// position advance with the updated rates.
AgentState step_dynamics(const AgentState& s, const Action& a, const DynamicsParams& params = {});

}  // namespace vg
