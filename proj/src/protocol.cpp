#include "vg/protocol.hpp"

#include "vg/dynamics.hpp"
#include "vg/error.hpp"
#include "vg/render.hpp"

namespace vg {

using nlohmann::json;

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

void put_id(json& j, const std::optional<std::int64_t>& id) {
  if (id) j["id"] = *id;
}

std::optional<std::int64_t> get_id(const json& j) {
  if (!j.contains("id") || j.at("id").is_null()) return std::nullopt;
  if (!j.at("id").is_number_integer()) throw Error(errc::kParseError, "id: expected an integer");
  return j.at("id").get<std::int64_t>();
}

json reward_json(const RewardTerms& r) { return {{"r_nav", r.r_nav}, {"r_goal", r.r_goal}, {"total", r.total}}; }

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(errc::kParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(errc::kParseError, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const Request& r) {
  json j = std::visit(Overloaded{
                          [](const HelloRequest& m) -> json { return {{"type", "hello"}, {"protocol", m.protocol}}; },
                          [](const ResetRequest& m) -> json {
                            json o = {{"type", "reset"}, {"config", m.config}};
                            if (m.seed) o["seed"] = *m.seed;
                            return o;
                          },
                          [](const StepRequest& m) -> json { return {{"type", "step"}, {"action", m.action}}; },
                          [](const RenderRequest& m) -> json { return {{"type", "render"}, {"format", m.format}}; },
                          [](const CloseRequest&) -> json { return {{"type", "close"}}; },
                      },
                      r.body);
  put_id(j, r.id);
  return j;
}

json to_json(const Response& r) {
  json j = std::visit(
      Overloaded{
          [](const SpecResponse& m) -> json {
            json palette = json::array();
            for (const auto& p : m.palette) palette.push_back({{"id", p.id}, {"name", p.name}, {"rgb", p.rgb}});
            return {{"type", "spec"},
                    {"protocol", m.protocol},
                    {"actions", m.actions},
                    {"observation_shape", m.observation_shape},
                    {"palette", palette}};
          },
          [](const ObservationResponse& m) -> json {
            json o = {{"type", "observation"},
                      {"t", m.t},
                      {"frames", m.frames},
                      {"reward", reward_json(m.reward)},
                      {"terminal", m.terminal},
                      {"event", m.event},
                      {"waypoints_collected", m.waypoints_collected},
                      {"waypoints_total", m.waypoints_total}};
            if (m.hybrid_vector) o["hybrid_vector"] = {{"r", m.hybrid_vector->r}, {"theta_norm", m.hybrid_vector->theta_norm}};
            if (m.outcome) o["outcome"] = *m.outcome;
            return o;
          },
          [](const FrameResponse& m) -> json {
            return {{"type", "frame"}, {"format", m.format}, {"width", m.width}, {"height", m.height}, {"data", m.data}};
          },
          [](const ErrorResponse& m) -> json { return {{"type", "error"}, {"code", m.code}, {"message", m.message}}; },
          [](const ClosedResponse&) -> json { return {{"type", "closed"}}; },
      },
      r.body);
  put_id(j, r.id);
  return j;
}

Request request_from_json(const json& j) {
  if (!j.is_object()) throw Error(errc::kParseError, "request must be a JSON object");
  Request r;
  r.id = get_id(j);
  const auto type = field<std::string>(j, "type");
  if (type == "hello") {
    r.body = HelloRequest{j.contains("protocol") ? field<std::string>(j, "protocol") : std::string(kProtocolVersion)};
  } else if (type == "reset") {
    ResetRequest m;
    if (j.contains("seed") && !j.at("seed").is_null()) {
      if (!j.at("seed").is_number_unsigned()) throw Error(errc::kParseError, "seed: expected a non-negative integer");
      m.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("config")) {
      if (!j.at("config").is_object()) throw Error(errc::kParseError, "config: expected an object");
      m.config = j.at("config");
    }
    r.body = std::move(m);
  } else if (type == "step") {
    r.body = StepRequest{field<std::string>(j, "action")};
  } else if (type == "render") {
    r.body = RenderRequest{j.contains("format") ? field<std::string>(j, "format") : std::string("raw")};
  } else if (type == "close") {
    r.body = CloseRequest{};
  } else {
    throw Error(errc::kParseError, "unknown request type '" + type + "'");
  }
  return r;
}

Response response_from_json(const json& j) {
  if (!j.is_object()) throw Error(errc::kParseError, "response must be a JSON object");
  Response r;
  r.id = get_id(j);
  const auto type = field<std::string>(j, "type");
  if (type == "spec") {
    SpecResponse m;
    m.protocol = field<std::string>(j, "protocol");
    m.actions = field<std::vector<std::string>>(j, "actions");
    m.observation_shape = field<std::array<int, 3>>(j, "observation_shape");
    for (const auto& p : field<json>(j, "palette")) {
      m.palette.push_back({field<int>(p, "id"), field<std::string>(p, "name"), field<std::array<int, 3>>(p, "rgb")});
    }
    r.body = std::move(m);
  } else if (type == "observation") {
    ObservationResponse m;
    m.t = field<int>(j, "t");
    m.frames = field<std::string>(j, "frames");
    const auto rw = field<json>(j, "reward");
    m.reward = {field<double>(rw, "r_nav"), field<double>(rw, "r_goal"), field<double>(rw, "total")};
    m.terminal = field<bool>(j, "terminal");
    m.event = field<std::string>(j, "event");
    m.waypoints_collected = field<int>(j, "waypoints_collected");
    m.waypoints_total = field<int>(j, "waypoints_total");
    if (j.contains("hybrid_vector")) {
      const auto& h = j.at("hybrid_vector");
      m.hybrid_vector = HybridVector{field<double>(h, "r"), field<double>(h, "theta_norm")};
    }
    if (j.contains("outcome")) m.outcome = field<std::string>(j, "outcome");
    r.body = std::move(m);
  } else if (type == "frame") {
    r.body = FrameResponse{field<std::string>(j, "format"), field<int>(j, "width"), field<int>(j, "height"),
                           field<std::string>(j, "data")};
  } else if (type == "error") {
    r.body = ErrorResponse{field<std::string>(j, "code"), field<std::string>(j, "message")};
  } else if (type == "closed") {
    r.body = ClosedResponse{};
  } else {
    throw Error(errc::kParseError, "unknown response type '" + type + "'");
  }
  return r;
}

namespace {

json parse_line(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(errc::kParseError, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string encode(const Request& r) { return to_json(r).dump(); }
std::string encode(const Response& r) { return to_json(r).dump(); }
Request decode_request(std::string_view line) { return request_from_json(parse_line(line)); }
Response decode_response(std::string_view line) { return response_from_json(parse_line(line)); }

SpecResponse standard_spec() {
  SpecResponse s;
  for (const auto& a : kStandardActions) s.actions.push_back(action_name(a));
  s.observation_shape = {kStackDepth, kFrameRows, kFrameCols};
  for (const auto& info : kPalette) {
    s.palette.push_back({class_id(info.cls), std::string(info.name), {info.color.r, info.color.g, info.color.b}});
  }
  return s;
}

}  // namespace vg
