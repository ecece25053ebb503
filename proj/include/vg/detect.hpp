#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vg/dynamics.hpp"
#include "vg/guidance.hpp"
#include "vg/render.hpp"

namespace vg {

inline constexpr std::string_view kDetectionSchema = "vgdet/1";

struct BBox {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;  // pixels
  bool operator==(const BBox&) const = default;
};

struct Detection {
  std::string label;
  BBox bbox;
  double score = 0.0;
  bool operator==(const Detection&) const = default;
};

/// One detector output: the image's camera and the pose it was taken from.
struct DetectionFrame {
  CameraModel camera;  // cols/rows are the image size
  AgentState pose;
  std::vector<Detection> detections;
};

/// Throws InvariantViolation for boxes outside the image, empty boxes or
/// scores outside [0, 1].
void validate_detection(const Detection& d, const CameraModel& cam);

DetectionFrame parse_detections(const nlohmann::json& doc);
DetectionFrame load_detections(const std::filesystem::path& path);
nlohmann::json detections_to_json(const DetectionFrame& f);

struct LabeledTarget {
  std::string label;
  Vec2 position;
  double score = 0.0;
  bool operator==(const LabeledTarget&) const = default;
};

/// Back-projects each box's bottom-center pixel onto the ground. Duplicate
/// labels keep the highest-score box. Output is sorted by label. When
/// vocabulary is given, a detection with a label outside it throws
/// UnknownLabel. A box whose bottom edge is at or above the horizon throws
/// NoGroundIntersection.
std::vector<LabeledTarget> detections_to_waypoints(std::span<const Detection> dets, const CameraModel& cam,
                                                   const AgentState& pose,
                                                   const std::vector<std::string>* vocabulary = nullptr);

/// "a & b & c" (reach all, in order) or "a | b" (reach the nearest one).
/// Labels may be quoted and the whole expression may sit in braces.
struct Mission {
  enum class Op { All, Any };
  Op op = Op::All;
  std::vector<std::string> labels;
  bool operator==(const Mission&) const = default;
};

/// Throws ParseError for empty labels or mixed operators.
Mission parse_mission(std::string_view expr);

/// ALL: every label in prompt order, UnresolvedLabel if one is missing. ANY:
/// the resolved label nearest to `from`, UnresolvedLabel if none resolved.
std::vector<LabeledTarget> compose_mission(const Mission& mission, std::span<const LabeledTarget> resolved, Vec2 from);

/// Sequential progress through a target list.
struct MissionTracker {
  std::vector<LabeledTarget> targets;
  std::size_t current = 0;
  double reach_radius = 2.0;  // m

  /// Advances past every consecutive target within reach of p. Returns how
  /// many were reached.
  int update(Vec2 p);
  bool done() const { return current >= targets.size(); }
};

/// Waypoints: spheres at the targets not yet reached. Path: a straight ribbon
/// from the agent to the current target. HybridVector, or mission done: empty.
GuidanceGeometry guidance_from_mission(const MissionTracker& tracker, GuidanceScheme scheme, const AgentState& agent,
                                       double sphere_radius = 0.5);

nlohmann::json geometry_to_json(const GuidanceGeometry& g);

}  // namespace vg
