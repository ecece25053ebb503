#include "vg/server.hpp"

#include <cerrno>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "fdio.hpp"
#include "vg/error.hpp"
#include "vg/session.hpp"

namespace vg {

void serve_stream(std::istream& in, std::ostream& out, const CityMap& map, const EpisodeConfig& base) {
  Session session(map, base);
  std::string line;
  while (session.state() != Session::State::Closed && std::getline(in, line)) {
    if (line.empty()) continue;
    out << session.handle_line(line) << '\n' << std::flush;
  }
}

void serve_fd(int fd, const CityMap& map, const EpisodeConfig& base) {
  Session session(map, base);
  detail::LineReader reader(fd);
  while (session.state() != Session::State::Closed) {
    auto line = reader.next();
    if (!line) break;
    if (line->empty()) continue;
    if (!detail::write_all(fd, session.handle_line(*line) + '\n')) break;
  }
}

void serve_tcp(const CityMap& map, const EpisodeConfig& base, const TcpOptions& options) {
  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) throw Error(errc::kIoError, std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(options.port));
  if (::inet_pton(AF_INET, options.host.c_str(), &addr.sin_addr) != 1) {
    ::close(listener);
    throw Error(errc::kIoError, "bad IPv4 address '" + options.host + "'");
  }
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(listener, 16) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listener);
    throw Error(errc::kIoError, "cannot listen on " + options.host + ":" + std::to_string(options.port) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  if (options.on_listen) options.on_listen(ntohs(addr.sin_port));

  std::vector<std::thread> sessions;
  for (;;) {
    if (options.stop && options.stop->load()) break;
    pollfd pfd{listener, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const int conn = ::accept(listener, nullptr, nullptr);
    if (conn < 0) continue;
    sessions.emplace_back([conn, &map, &base] {
      serve_fd(conn, map, base);
      ::close(conn);
    });
  }
  ::close(listener);
  for (auto& t : sessions) t.join();
}

}  // namespace vg
