#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vg {

/// Standard alphabet with '=' padding, no line breaks.
std::string base64_encode(std::span<const std::uint8_t> bytes);

/// Strict inverse of base64_encode. Throws ParseError on bad length or characters.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace vg
