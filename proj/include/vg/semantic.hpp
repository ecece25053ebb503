#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vg {

/// Class ids as stored in frames and on the wire (1 byte per pixel).
enum class SemanticClass : std::uint8_t {
  Road = 0,
  Sidewalk = 1,
  Building = 2,
  Pedestrian = 3,
  GuidancePath = 4,
  WaypointMarker = 5,
  Agent = 6,
  Void = 7,
};

inline constexpr std::size_t kNumClasses = 8;

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  constexpr bool operator==(const Rgb&) const = default;
};

struct ClassInfo {
  SemanticClass cls;
  std::string_view name;
  Rgb color;
};

// Scene colors follow the Cityscapes convention; the two overlay classes use
// saturated colors that no scene class uses.
inline constexpr std::array<ClassInfo, kNumClasses> kPalette{{
    {SemanticClass::Road, "Road", {128, 64, 128}},
    {SemanticClass::Sidewalk, "Sidewalk", {244, 35, 232}},
    {SemanticClass::Building, "Building", {70, 70, 70}},
    {SemanticClass::Pedestrian, "Pedestrian", {220, 20, 60}},
    {SemanticClass::GuidancePath, "GuidancePath", {0, 255, 255}},
    {SemanticClass::WaypointMarker, "WaypointMarker", {255, 255, 0}},
    {SemanticClass::Agent, "Agent", {0, 0, 142}},
    {SemanticClass::Void, "Void", {0, 0, 0}},
}};

constexpr std::uint8_t class_id(SemanticClass c) { return static_cast<std::uint8_t>(c); }

constexpr const ClassInfo& class_info(SemanticClass c) { return kPalette[class_id(c)]; }

constexpr std::string_view class_name(SemanticClass c) { return class_info(c).name; }

constexpr Rgb class_color(SemanticClass c) { return class_info(c).color; }

constexpr std::optional<SemanticClass> class_from_name(std::string_view name) {
  for (const auto& info : kPalette) {
    if (info.name == name) return info.cls;
  }
  return std::nullopt;
}

constexpr std::optional<SemanticClass> class_from_id(std::uint8_t id) {
  if (id >= kNumClasses) return std::nullopt;
  return static_cast<SemanticClass>(id);
}

}  // namespace vg
