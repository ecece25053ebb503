#include "vg/session.hpp"

#include <random>
#include <vector>

#include "vg/base64.hpp"
#include "vg/config.hpp"
#include "vg/error.hpp"

namespace vg {

namespace {

ErrorResponse error(const char* code, std::string message) { return {code, std::move(message)}; }

}  // namespace

ObservationResponse make_observation(const Episode& ep, const Episode::StepInfo& last) {
  ObservationResponse o;
  o.t = ep.agent().t;
  o.frames = base64_encode(ep.observation().bytes());
  o.hybrid_vector = ep.hybrid();
  o.reward = last.reward;
  o.terminal = ep.terminal();
  o.event = std::string(event_name(last.event));
  if (ep.outcome()) o.outcome = std::string(outcome_name(*ep.outcome()));
  o.waypoints_collected = static_cast<int>(ep.waypoints().collected_count());
  o.waypoints_total = static_cast<int>(ep.waypoints().waypoints.size());
  return o;
}

void choose_route(const CityMap& map, EpisodeConfig& cfg) {
  std::vector<std::string> labels;
  for (const auto& [label, p] : map.named_points()) labels.push_back(label);
  if (labels.size() < 2) throw Error(errc::kUsage, "map needs two named points to choose a route");
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto i = rng() % labels.size();
    auto j = rng() % (labels.size() - 1);
    if (j >= i) ++j;
    try {
      plan(map, map.named_point(labels[i]), map.named_point(labels[j]));
    } catch (const Error&) {
      continue;
    }
    cfg.start_label = labels[i];
    cfg.goal_label = labels[j];
    return;
  }
  throw Error(errc::kNoPath, "no connected pair of named points found");
}

Session::Session(const CityMap& map, EpisodeConfig base) : map_(map), base_(std::move(base)) {}

Response Session::handle(const Request& req) {
  Response out;
  out.id = req.id;
  if (state_ == State::Closed) {
    out.body = error(proto_err::kBadRequest, "session is closed");
    return out;
  }
  out.body = std::visit(
      [this](const auto& m) -> ResponseBody {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HelloRequest>) return on_hello(m);
        if constexpr (std::is_same_v<T, ResetRequest>) return on_reset(m);
        if constexpr (std::is_same_v<T, StepRequest>) return on_step(m);
        if constexpr (std::is_same_v<T, RenderRequest>) return on_render(m);
        if constexpr (std::is_same_v<T, CloseRequest>) {
          state_ = State::Closed;
          episode_.reset();
          return ClosedResponse{};
        }
      },
      req.body);
  return out;
}

std::string Session::handle_line(std::string_view line) {
  Request req;
  try {
    req = decode_request(line);
  } catch (const Error& e) {
    Response r;
    // Echo the id when the line was valid JSON with an integer id.
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.is_object() && j.contains("id") && j.at("id").is_number_integer()) r.id = j.at("id").get<std::int64_t>();
    } catch (const nlohmann::json::exception&) {
    }
    r.body = error(proto_err::kParseError, e.what());
    return encode(r);
  }
  return encode(handle(req));
}

ResponseBody Session::on_hello(const HelloRequest& m) {
  if (m.protocol != kProtocolVersion) {
    return error(proto_err::kVersionMismatch,
                 "server speaks " + std::string(kProtocolVersion) + ", client asked for " + m.protocol);
  }
  return standard_spec();
}

ResponseBody Session::on_reset(const ResetRequest& m) {
  EpisodeConfig cfg = base_;
  cfg.seed = m.seed.value_or(base_.seed + resets_);
  try {
    apply_overrides(cfg, m.config);
    if (m.seed) cfg.seed = *m.seed;
    if (cfg.start_label.empty() || cfg.goal_label.empty()) choose_route(map_, cfg);
    auto next = std::make_unique<Episode>(map_, cfg, true);
    episode_ = std::move(next);
  } catch (const Error& e) {
    // A failed reset leaves the previous episode (if any) untouched.
    return error(proto_err::kBadRequest, e.code() + ": " + e.what());
  }
  ++resets_;
  state_ = State::Running;
  return observation({});
}

ResponseBody Session::on_step(const StepRequest& m) {
  if (state_ == State::Idle) return error(proto_err::kNoEpisode, "step before reset");
  if (state_ == State::Terminal) return error(proto_err::kEpisodeDone, "episode already terminated; send reset");
  const auto action = parse_action(m.action);
  if (!action) return error(proto_err::kBadRequest, "unknown action '" + m.action + "'");
  const auto info = episode_->step(*action);
  if (episode_->terminal()) state_ = State::Terminal;
  return observation(info);
}

ResponseBody Session::on_render(const RenderRequest& m) const {
  if (!episode_) return error(proto_err::kNoEpisode, "render before reset");
  const SegFrame& f = episode_->observation().frames.back();
  if (m.format == "raw") {
    return FrameResponse{"raw", kFrameCols, kFrameRows, base64_encode(f.pixels)};
  }
  if (m.format == "ppm") {
    const std::string ppm = frame_to_ppm(f);
    return FrameResponse{"ppm", kFrameCols, kFrameRows,
                         base64_encode({reinterpret_cast<const std::uint8_t*>(ppm.data()), ppm.size()})};
  }
  return error(proto_err::kBadRequest, "unknown render format '" + m.format + "' (expected raw|ppm)");
}

ObservationResponse Session::observation(const Episode::StepInfo& info) const {
  return make_observation(*episode_, info);
}

}  // namespace vg
