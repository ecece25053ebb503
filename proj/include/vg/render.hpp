#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vg/city_map.hpp"
#include "vg/dynamics.hpp"
#include "vg/guidance.hpp"
#include "vg/semantic.hpp"

namespace vg {

inline constexpr int kFrameRows = 84;
inline constexpr int kFrameCols = 180;
inline constexpr int kStackDepth = 3;
inline constexpr std::size_t kFrameBytes = static_cast<std::size_t>(kFrameRows) * kFrameCols;

/// Pinhole camera rigidly attached to the agent, looking along its heading.
struct CameraModel {
  double height = 1.5;  // m above ground
  double pitch = 10.0;  // deg, downward
  double hfov = 90.0;   // deg
  int cols = kFrameCols;
  int rows = kFrameRows;
  double near_plane = 0.3;  // m
  double far_plane = 200.0; // m; ground beyond this renders as Void

  /// Throws InvariantViolation.
  void validate() const;
  double focal_px() const;
  double cx() const { return (cols - 1) / 2.0; }
  double cy() const { return (rows - 1) / 2.0; }
};

/// Continuous pixel coordinates: pixel (r, c) has its center at (r, c), so the
/// image centerline is at col = (cols - 1) / 2.
struct PixelHit {
  double row = 0.0;
  double col = 0.0;
  double depth = 0.0;  // along the optical axis, m
};

/// nullopt if behind the near plane or outside the image.
std::optional<PixelHit> project(const CameraModel& cam, const AgentState& agent, Vec2 p, double elevation = 0.0);

/// Ground-plane point seen through continuous pixel (row, col); nullopt when
/// the ray does not descend toward the ground.
std::optional<Vec2> unproject_to_ground(const CameraModel& cam, const AgentState& agent, double row, double col);

struct SegFrame {
  std::array<std::uint8_t, kFrameBytes> pixels{};

  SemanticClass at(int row, int col) const { return static_cast<SemanticClass>(pixels[row * kFrameCols + col]); }
  void set(int row, int col, SemanticClass c) { pixels[row * kFrameCols + col] = class_id(c); }
  std::size_t count(SemanticClass c) const;
  bool operator==(const SegFrame&) const = default;
};

/// The three most recent frames, oldest first.
struct ObservationStack {
  std::array<SegFrame, kStackDepth> frames{};

  static ObservationStack reset(const SegFrame& f);
  /// Drops the oldest frame and appends f.
  ObservationStack push(const SegFrame& f) const;
  /// 3*84*180 class ids, frame-major then row-major.
  std::vector<std::uint8_t> bytes() const;
  bool operator==(const ObservationStack&) const = default;
};

struct RenderOptions {
  double ribbon_width = 1.0;           // m, guidance path ground ribbon
  double pedestrian_width = 0.6;       // m
  double pedestrian_height = 1.7;      // m
  int supersample = 1;                 // >1 renders k-times larger and downsamples by class majority
};

SegFrame render_frame(const CityMap& map, std::span<const Vec2> pedestrian_positions, const AgentState& agent,
                      const GuidanceGeometry& geometry, const CameraModel& cam, const RenderOptions& options = {});

/// Binary PPM (P6) through the class palette.
std::string frame_to_ppm(const SegFrame& f);

}  // namespace vg
