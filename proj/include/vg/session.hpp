#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "vg/city_map.hpp"
#include "vg/episode.hpp"
#include "vg/protocol.hpp"

namespace vg {

/// Server side of one connection: Idle -> Running -> Terminal, and reset from
/// any state starts a fresh episode (aborting a running one). The map is
/// shared read-only; everything else is owned by the session.
class Session {
 public:
  enum class State { Idle, Running, Terminal, Closed };

  Session(const CityMap& map, EpisodeConfig base);

  /// Exactly one response per request; the id is echoed.
  Response handle(const Request& req);
  /// Decodes, handles and encodes one line. Malformed lines yield a parse_error
  /// response and leave the state unchanged.
  std::string handle_line(std::string_view line);

  State state() const { return state_; }
  const Episode* episode() const { return episode_.get(); }

 private:
  ResponseBody on_hello(const HelloRequest& m);
  ResponseBody on_reset(const ResetRequest& m);
  ResponseBody on_step(const StepRequest& m);
  ResponseBody on_render(const RenderRequest& m) const;
  ObservationResponse observation(const Episode::StepInfo& info) const;

  const CityMap& map_;
  EpisodeConfig base_;
  State state_ = State::Idle;
  std::unique_ptr<Episode> episode_;
  std::uint64_t resets_ = 0;
};

/// Encodes an episode's current observation for the wire.
ObservationResponse make_observation(const Episode& ep, const Episode::StepInfo& last);

/// Picks a route for an episode that names no endpoints: two distinct named
/// points drawn with the seed, retried until they are connected.
void choose_route(const CityMap& map, EpisodeConfig& cfg);

}  // namespace vg
