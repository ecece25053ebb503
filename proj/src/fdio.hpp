#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace vg::detail {

/// Buffered newline-delimited reads from a file descriptor.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}
  /// The next line without its '\n'; nullopt at end of stream. A final
  /// unterminated line is returned as is.
  std::optional<std::string> next();

 private:
  int fd_;
  std::string buf_;
  bool eof_ = false;
};

/// Writes everything, retrying on EINTR. False on any other error.
bool write_all(int fd, std::string_view data);

}  // namespace vg::detail
