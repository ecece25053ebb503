#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "vg/guidance.hpp"
#include "vg/reward.hpp"
#include "vg/semantic.hpp"

namespace vg {

inline constexpr std::string_view kProtocolVersion = "vgenv/1";

// Requests (client -> server). The "type" field selects the kind.

struct HelloRequest {
  std::string protocol{kProtocolVersion};
  bool operator==(const HelloRequest&) const = default;
};

struct ResetRequest {
  std::optional<std::uint64_t> seed;
  nlohmann::json config = nlohmann::json::object();  // overrides, see apply_overrides
  bool operator==(const ResetRequest&) const = default;
};

struct StepRequest {
  std::string action;  // "NOOP", "TURN(-35)", "TURN(+35)"
  bool operator==(const StepRequest&) const = default;
};

struct RenderRequest {
  std::string format = "raw";  // raw | ppm
  bool operator==(const RenderRequest&) const = default;
};

struct CloseRequest {
  bool operator==(const CloseRequest&) const = default;
};

using RequestBody = std::variant<HelloRequest, ResetRequest, StepRequest, RenderRequest, CloseRequest>;

struct Request {
  std::optional<std::int64_t> id;
  RequestBody body;
  bool operator==(const Request&) const = default;
};

// Responses (server -> client).

struct PaletteEntry {
  int id = 0;
  std::string name;
  std::array<int, 3> rgb{};
  bool operator==(const PaletteEntry&) const = default;
};

struct SpecResponse {
  std::string protocol{kProtocolVersion};
  std::vector<std::string> actions;
  std::array<int, 3> observation_shape{};
  std::vector<PaletteEntry> palette;
  bool operator==(const SpecResponse&) const = default;
};

struct ObservationResponse {
  int t = 0;
  std::string frames;  // base64 of 3*84*180 class ids, oldest frame first
  std::optional<HybridVector> hybrid_vector;
  RewardTerms reward;
  bool terminal = false;
  std::string event = "none";        // terminal event of the last step
  std::optional<std::string> outcome;  // set once terminal
  int waypoints_collected = 0;
  int waypoints_total = 0;
  bool operator==(const ObservationResponse&) const = default;
};

struct FrameResponse {
  std::string format;  // raw | ppm
  int width = 0;
  int height = 0;
  std::string data;  // base64
  bool operator==(const FrameResponse&) const = default;
};

struct ErrorResponse {
  std::string code;  // no_episode | episode_done | bad_request | parse_error | version_mismatch
  std::string message;
  bool operator==(const ErrorResponse&) const = default;
};

struct ClosedResponse {
  bool operator==(const ClosedResponse&) const = default;
};

using ResponseBody = std::variant<SpecResponse, ObservationResponse, FrameResponse, ErrorResponse, ClosedResponse>;

struct Response {
  std::optional<std::int64_t> id;
  ResponseBody body;
  bool operator==(const Response&) const = default;
};

namespace proto_err {
inline constexpr const char* kNoEpisode = "no_episode";
inline constexpr const char* kEpisodeDone = "episode_done";
inline constexpr const char* kBadRequest = "bad_request";
inline constexpr const char* kParseError = "parse_error";
inline constexpr const char* kVersionMismatch = "version_mismatch";
}  // namespace proto_err

nlohmann::json to_json(const Request& r);
nlohmann::json to_json(const Response& r);
/// Throw ParseError on missing or mistyped fields.
Request request_from_json(const nlohmann::json& j);
Response response_from_json(const nlohmann::json& j);

/// One compact JSON line without the trailing newline.
std::string encode(const Request& r);
std::string encode(const Response& r);
Request decode_request(std::string_view line);
Response decode_response(std::string_view line);

/// The spec message for the standard action set and frame shape.
SpecResponse standard_spec();

}  // namespace vg
