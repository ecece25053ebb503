#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <string>

#include "vg/city_map.hpp"
#include "vg/episode.hpp"

namespace vg {

/// Serves one session over a line stream until close or end of input.
void serve_stream(std::istream& in, std::ostream& out, const CityMap& map, const EpisodeConfig& base);

/// Serves one session over a connected file descriptor until close or EOF.
void serve_fd(int fd, const CityMap& map, const EpisodeConfig& base);

struct TcpOptions {
  std::string host = "127.0.0.1";
  int port = 5555;  // 0 picks a free port
  /// Called once listening, with the bound port.
  std::function<void(int)> on_listen;
  /// Polled about every 100 ms; the server returns when it becomes true.
  const std::atomic<bool>* stop = nullptr;
};

/// Accepts connections and runs one session per connection on its own thread.
/// Throws IoError when the address cannot be bound. Returns after stop is set,
/// once every session thread has finished.
void serve_tcp(const CityMap& map, const EpisodeConfig& base, const TcpOptions& options);

}  // namespace vg
