#pragma once

#include <stdexcept>
#include <string>

namespace vg {

/// Error carrying a stable, machine-parsable code (e.g. "NoPath", "OffRoad")
/// next to a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* kParseError = "ParseError";
inline constexpr const char* kInvariantViolation = "InvariantViolation";
inline constexpr const char* kIoError = "IoError";
inline constexpr const char* kNoPath = "NoPath";
inline constexpr const char* kOffRoad = "OffRoad";
inline constexpr const char* kAllCollected = "AllCollected";
inline constexpr const char* kNoGroundIntersection = "NoGroundIntersection";
inline constexpr const char* kUnknownLabel = "UnknownLabel";
inline constexpr const char* kUnresolvedLabel = "UnresolvedLabel";
inline constexpr const char* kUsage = "UsageError";
inline constexpr const char* kPolicyProtocol = "PolicyProtocolError";
inline constexpr const char* kEmptySet = "EmptyResultSet";
inline constexpr const char* kMapMismatch = "MapMismatch";
}  // namespace errc

}  // namespace vg
