#include "vg/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace vg {

std::string action_name(const Action& a) {
  if (a.kind == Action::Kind::Noop) return "NOOP";
  char buf[64];
  std::snprintf(buf, sizeof buf, "TURN(%+g)", a.alpha);
  return buf;
}

std::optional<Action> parse_action(std::string_view name) {
  if (name == "NOOP") return Action::noop();
  constexpr std::string_view prefix = "TURN(";
  if (!name.starts_with(prefix) || !name.ends_with(")")) return std::nullopt;
  auto body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double alpha = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), alpha);
  if (ec != std::errc{} || ptr != body.data() + body.size()) return std::nullopt;
  return Action::turn(alpha);
}

AgentState step_dynamics(const AgentState& s, const Action& a, const DynamicsParams& params) {
  const double alpha = a.kind == Action::Kind::Turn ? a.alpha : 0.0;
  AgentState next = s;
  if (alpha != 0.0) {
    next.omega = std::clamp(s.omega + alpha * params.kappa * params.dt, -params.omega_max, params.omega_max);
  }
  if (next.omega != 0.0) next.heading = wrap_deg(s.heading - next.omega * params.dt);
  next.position = s.position + unit_from_heading(next.heading) * (s.speed * params.dt);
  next.t = s.t + 1;
  return next;
}

}  // namespace vg
