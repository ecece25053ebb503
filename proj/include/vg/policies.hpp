#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "vg/dynamics.hpp"
#include "vg/guidance.hpp"
#include "vg/planner.hpp"
#include "vg/render.hpp"
#include "vg/reward.hpp"

namespace vg {

/// What a policy may look at for one decision. Pixel policies read
/// `observation`; scripted oracles read the privileged fields instead.
struct PolicyInput {
  const ObservationStack* observation = nullptr;  // null when the episode skips rendering
  const AgentState* agent = nullptr;
  const PlannedPath* path = nullptr;
  const WaypointSet* waypoints = nullptr;
  std::optional<HybridVector> hybrid;
  RewardTerms last_reward;  // reward of the previous step; zero at t = 0
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const PolicyInput& in) = 0;
  virtual void reset(std::uint64_t /*seed*/) {}
  /// Whether act() needs rendered observations.
  virtual bool uses_pixels() const { return false; }
  virtual std::string name() const = 0;
};

struct SteeringParams {
  double deadband = 3.0;         // deg
  double alpha = kStandardAlpha; // deg/s^2
  double kappa = 2.0;            // must match the dynamics
};

/// Bang-bang steering toward a target point. The bearing error is corrected by
/// the rotation still to come if the current turn rate were braked to zero, so
/// the command is the turn that drives the settled error toward zero.
Action steer_toward(const AgentState& agent, Vec2 target, const SteeringParams& params = {});

/// Steers at the path point `lookahead` meters past the agent's projection.
Action pure_pursuit_path(const AgentState& agent, const PlannedPath& path, double lookahead = 6.0,
                         const SteeringParams& params = {});

/// Steers at the next uncollected waypoint. Once that waypoint is nearer than
/// `lookahead`, the aim point continues along the chain of remaining waypoints
/// by the leftover distance. NOOP when all are collected.
Action waypoint_greedy(const AgentState& agent, const WaypointSet& w, double lookahead = 6.0,
                       const SteeringParams& params = {});

/// Uses only the polar guidance vector.
Action hybrid_follower(const HybridVector& vec, double deadband_deg = 3.0, double alpha = kStandardAlpha);

class PursuitPolicy final : public Policy {
 public:
  explicit PursuitPolicy(double lookahead = 6.0, SteeringParams params = {}) : lookahead_(lookahead), params_(params) {}
  Action act(const PolicyInput& in) override;
  std::string name() const override { return "pursuit"; }

 private:
  double lookahead_;
  SteeringParams params_;
};

class GreedyPolicy final : public Policy {
 public:
  explicit GreedyPolicy(double lookahead = 6.0, SteeringParams params = {}) : lookahead_(lookahead), params_(params) {}
  Action act(const PolicyInput& in) override;
  std::string name() const override { return "greedy"; }

 private:
  double lookahead_;
  SteeringParams params_;
};

class HybridPolicy final : public Policy {
 public:
  explicit HybridPolicy(double deadband = 3.0) : deadband_(deadband) {}
  Action act(const PolicyInput& in) override;
  std::string name() const override { return "hybrid"; }

 private:
  double deadband_;
};

/// Uniform over the standard action set.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed = 0) { reset(seed); }
  Action act(const PolicyInput& in) override;
  void reset(std::uint64_t seed) override { rng_.seed(seed); }
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

/// Builds "pursuit" | "greedy" | "hybrid" | "random". "remote" is built by
/// make_remote_policy. Throws UsageError for other names.
std::unique_ptr<Policy> make_policy(const std::string& name, std::uint64_t seed = 0);

/// Runs `command` through /bin/sh and talks to it over its stdin/stdout. The
/// child first receives the spec message, then one observation message per
/// decision (same encoding as the environment server), and must answer each
/// observation with one step request line. Throws PolicyProtocolError when the
/// child exits or answers anything else.
std::unique_ptr<Policy> make_remote_policy(const std::string& command);

}  // namespace vg
