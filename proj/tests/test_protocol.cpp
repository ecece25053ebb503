#include <gtest/gtest.h>

#include <atomic>
#include <future>
#include <sstream>
#include <thread>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "helpers.hpp"
#include "vg/base64.hpp"
#include "vg/episode.hpp"
#include "vg/policies.hpp"
#include "vg/protocol.hpp"
#include "vg/server.hpp"
#include "vg/session.hpp"

using namespace vg;
using nlohmann::json;
using vg::test::error_code;

namespace {

EpisodeConfig base_config() {
  EpisodeConfig cfg;
  cfg.start_label = "A";
  cfg.goal_label = "P";
  cfg.pedestrians = false;
  return cfg;
}

template <class T>
const T& body(const Response& r) {
  const T* p = std::get_if<T>(&r.body);
  if (!p) throw std::runtime_error("unexpected response: " + encode(r));
  return *p;
}

Response call(Session& s, RequestBody b, std::optional<std::int64_t> id = std::nullopt) {
  return s.handle(Request{id, std::move(b)});
}

}  // namespace

TEST(Base64, KnownVectors) {
  auto enc = [](std::string s) {
    return base64_encode({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  const auto d = base64_decode("Zm9vYg==");
  EXPECT_EQ(std::string(d.begin(), d.end()), "foob");
}

TEST(Base64, RoundTripAllLengths) {
  std::vector<std::uint8_t> bytes;
  for (int n = 0; n < 300; ++n) {
    EXPECT_EQ(base64_decode(base64_encode(bytes)), bytes);
    bytes.push_back(static_cast<std::uint8_t>(n * 37 + 11));
  }
}

TEST(Base64, RejectsMalformed) {
  EXPECT_EQ(error_code([] { base64_decode("abc"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { base64_decode("ab!d"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { base64_decode("a=bc"); }), errc::kParseError);
}

TEST(Protocol, RequestRoundTrips) {
  std::vector<Request> reqs = {
      {1, HelloRequest{}},
      {std::nullopt, HelloRequest{"vgenv/2"}},
      {2, ResetRequest{}},
      {3, ResetRequest{42, json{{"scheme", "waypoints"}, {"horizon", 500}}}},
      {4, StepRequest{"TURN(+35)"}},
      {5, RenderRequest{"ppm"}},
      {6, CloseRequest{}},
  };
  for (const auto& r : reqs) {
    const auto line = encode(r);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(decode_request(line), r) << line;
  }
}

TEST(Protocol, ResponseRoundTrips) {
  ObservationResponse o;
  o.t = 7;
  o.frames = "AAAA";
  o.hybrid_vector = HybridVector{12.5, -0.25};
  o.reward = RewardTerms::of(5.0, 10.0);
  o.terminal = true;
  o.event = "reached_goal";
  o.outcome = "success";
  o.waypoints_collected = 3;
  o.waypoints_total = 4;
  ObservationResponse plain;
  plain.frames = "AAAA";
  std::vector<Response> resps = {
      {1, standard_spec()}, {2, o},       {3, plain}, {4, FrameResponse{"raw", 180, 84, "AAAA"}},
      {5, ErrorResponse{proto_err::kNoEpisode, "step before reset"}}, {std::nullopt, ClosedResponse{}},
  };
  for (const auto& r : resps) {
    const auto line = encode(r);
    EXPECT_EQ(decode_response(line), r) << line;
  }
}

TEST(Protocol, SpecContents) {
  const auto s = standard_spec();
  EXPECT_EQ(s.protocol, "vgenv/1");
  EXPECT_EQ(s.actions, (std::vector<std::string>{"NOOP", "TURN(-35)", "TURN(+35)"}));
  EXPECT_EQ(s.observation_shape, (std::array<int, 3>{3, 84, 180}));
  ASSERT_EQ(s.palette.size(), kNumClasses);
  EXPECT_EQ(s.palette[0].name, "Road");
}

TEST(Protocol, DecodeErrors) {
  EXPECT_EQ(error_code([] { decode_request("{not json"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { decode_request(R"({"type":"jump"})"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { decode_request(R"({"type":"step"})"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { decode_request(R"({"type":"reset","seed":-1})"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { decode_request(R"([1,2])"); }), errc::kParseError);
  EXPECT_EQ(error_code([] { decode_request(R"({"type":"hello","id":"x"})"); }), errc::kParseError);
}

TEST(Session, HelloAndVersionMismatch) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  const auto spec = body<SpecResponse>(call(s, HelloRequest{}, 9));
  EXPECT_EQ(spec.observation_shape, (std::array<int, 3>{3, 84, 180}));
  const auto err = body<ErrorResponse>(call(s, HelloRequest{"vgenv/2"}));
  EXPECT_EQ(err.code, proto_err::kVersionMismatch);
}

TEST(Session, StepBeforeResetIsNoEpisode) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  EXPECT_EQ(body<ErrorResponse>(call(s, StepRequest{"NOOP"})).code, proto_err::kNoEpisode);
  EXPECT_EQ(body<ErrorResponse>(call(s, RenderRequest{})).code, proto_err::kNoEpisode);
  EXPECT_EQ(s.state(), Session::State::Idle);
}

TEST(Session, ObservationPayloadIs45360Bytes) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  const auto o = body<ObservationResponse>(call(s, ResetRequest{1, json::object()}));
  EXPECT_EQ(base64_decode(o.frames).size(), 45360u);
  EXPECT_EQ(o.t, 0);
  EXPECT_FALSE(o.terminal);
  const auto o2 = body<ObservationResponse>(call(s, StepRequest{"NOOP"}));
  const auto bytes = base64_decode(o2.frames);
  ASSERT_EQ(bytes.size(), 45360u);
  for (auto b : bytes) ASSERT_LT(b, kNumClasses);
  EXPECT_EQ(o2.t, 1);
  EXPECT_EQ(o2.reward.total, o2.reward.r_nav + o2.reward.r_goal);
}

TEST(Session, StepAfterTerminalIsEpisodeDone) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  call(s, ResetRequest{1, json{{"horizon", 2}}});
  call(s, StepRequest{"NOOP"});
  const auto last = body<ObservationResponse>(call(s, StepRequest{"NOOP"}));
  EXPECT_TRUE(last.terminal);
  EXPECT_EQ(last.outcome, "timeout");
  EXPECT_EQ(last.event, "timeout");
  EXPECT_EQ(s.state(), Session::State::Terminal);
  EXPECT_EQ(body<ErrorResponse>(call(s, StepRequest{"NOOP"})).code, proto_err::kEpisodeDone);
  // Render still shows the final frame; reset starts over.
  EXPECT_EQ(body<FrameResponse>(call(s, RenderRequest{"raw"})).width, 180);
  body<ObservationResponse>(call(s, ResetRequest{}));
  EXPECT_EQ(s.state(), Session::State::Running);
}

TEST(Session, ResetWhileRunningStartsFresh) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  const auto first = body<ObservationResponse>(call(s, ResetRequest{5, json::object()}));
  for (int i = 0; i < 5; ++i) call(s, StepRequest{"TURN(+35)"});
  const auto again = body<ObservationResponse>(call(s, ResetRequest{5, json::object()}));
  EXPECT_EQ(again.t, 0);
  EXPECT_EQ(again.frames, first.frames);
}

TEST(Session, FailedResetKeepsPreviousEpisode) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  call(s, ResetRequest{1, json::object()});
  call(s, StepRequest{"NOOP"});
  const auto err = body<ErrorResponse>(call(s, ResetRequest{1, json{{"start", "nowhere"}}}));
  EXPECT_EQ(err.code, proto_err::kBadRequest);
  EXPECT_NE(err.message.find("UnknownLabel"), std::string::npos);
  EXPECT_EQ(s.state(), Session::State::Running);
  EXPECT_EQ(body<ObservationResponse>(call(s, StepRequest{"NOOP"})).t, 2);
  EXPECT_EQ(body<ErrorResponse>(call(s, ResetRequest{1, json{{"warp", 9}}})).code, proto_err::kBadRequest);
}

TEST(Session, BadActionAndRenderFormat) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  call(s, ResetRequest{});
  EXPECT_EQ(body<ErrorResponse>(call(s, StepRequest{"JUMP"})).code, proto_err::kBadRequest);
  EXPECT_EQ(body<ErrorResponse>(call(s, RenderRequest{"png"})).code, proto_err::kBadRequest);
  const auto ppm = body<FrameResponse>(call(s, RenderRequest{"ppm"}));
  const auto bytes = base64_decode(ppm.data);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 2), "P6");
  const auto raw = body<FrameResponse>(call(s, RenderRequest{"raw"}));
  EXPECT_EQ(base64_decode(raw.data).size(), kFrameBytes);
}

TEST(Session, CloseEndsSession) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  body<ClosedResponse>(call(s, CloseRequest{}));
  EXPECT_EQ(s.state(), Session::State::Closed);
  EXPECT_EQ(body<ErrorResponse>(call(s, HelloRequest{})).code, proto_err::kBadRequest);
}

TEST(Session, MalformedLineKeepsStateAndEchoesId) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  const auto r = decode_response(s.handle_line(R"({"type":"jump","id":17})"));
  EXPECT_EQ(r.id, 17);
  EXPECT_EQ(body<ErrorResponse>(r).code, proto_err::kParseError);
  EXPECT_EQ(body<ErrorResponse>(decode_response(s.handle_line("garbage"))).code, proto_err::kParseError);
  EXPECT_EQ(s.state(), Session::State::Idle);
}

TEST(Session, IdIsEchoed) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  EXPECT_EQ(call(s, HelloRequest{}, 41).id, 41);
  EXPECT_EQ(call(s, StepRequest{"NOOP"}, 42).id, 42);
}

TEST(Session, SameSeedSameActionsGiveIdenticalStreams) {
  const auto map = vg::test::city8();
  auto cfg = base_config();
  cfg.pedestrians = true;
  Session a(map, cfg), b(map, cfg);
  const std::vector<std::string> actions = {"NOOP", "TURN(+35)", "TURN(+35)", "NOOP", "TURN(-35)"};
  std::string sa = a.handle_line(R"({"type":"reset","seed":3})");
  std::string sb = b.handle_line(R"({"type":"reset","seed":3})");
  for (int i = 0; i < 30; ++i) {
    const std::string line = R"({"type":"step","action":")" + actions[i % actions.size()] + "\"}";
    sa += a.handle_line(line);
    sb += b.handle_line(line);
  }
  EXPECT_EQ(sa, sb);
}

TEST(Session, UnseededResetsAdvanceSeed) {
  const auto map = vg::test::city8();
  auto cfg = base_config();
  cfg.start_label.clear();
  cfg.goal_label.clear();
  Session s(map, cfg);
  call(s, ResetRequest{});
  const auto seed0 = s.episode()->config().seed;
  call(s, ResetRequest{});
  EXPECT_EQ(s.episode()->config().seed, seed0 + 1);
  EXPECT_FALSE(s.episode()->config().start_label.empty());
  EXPECT_NE(s.episode()->config().start_label, s.episode()->config().goal_label);
}

TEST(Session, HybridSchemeCarriesVector) {
  const auto map = vg::test::city8();
  Session s(map, base_config());
  const auto o = body<ObservationResponse>(call(s, ResetRequest{1, json{{"scheme", "hybrid"}}}));
  ASSERT_TRUE(o.hybrid_vector);
  EXPECT_GT(o.hybrid_vector->r, 0.0);
  const auto p = body<ObservationResponse>(call(s, ResetRequest{1, json{{"scheme", "path"}}}));
  EXPECT_FALSE(p.hybrid_vector);
}

TEST(Server, StreamTranscript) {
  const auto map = vg::test::city8();
  std::istringstream in(
      "{\"type\":\"hello\",\"id\":1}\n"
      "{\"type\":\"step\",\"action\":\"NOOP\",\"id\":2}\n"
      "\n"
      "{\"type\":\"reset\",\"seed\":0,\"id\":3}\n"
      "{\"type\":\"step\",\"action\":\"NOOP\",\"id\":4}\n"
      "{\"type\":\"close\",\"id\":5}\n"
      "{\"type\":\"hello\",\"id\":6}\n");
  std::ostringstream out;
  serve_stream(in, out, map, base_config());
  std::istringstream lines(out.str());
  std::vector<Response> rs;
  for (std::string l; std::getline(lines, l);) rs.push_back(decode_response(l));
  ASSERT_EQ(rs.size(), 5u);  // nothing after close
  body<SpecResponse>(rs[0]);
  EXPECT_EQ(body<ErrorResponse>(rs[1]).code, proto_err::kNoEpisode);
  EXPECT_EQ(body<ObservationResponse>(rs[2]).t, 0);
  EXPECT_EQ(body<ObservationResponse>(rs[3]).t, 1);
  body<ClosedResponse>(rs[4]);
  for (std::size_t i = 0; i < rs.size(); ++i) EXPECT_EQ(rs[i].id, static_cast<std::int64_t>(i + 1));
}

namespace {

class Client {
 public:
  explicit Client(int port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) throw std::runtime_error("connect");
  }
  ~Client() { ::close(fd_); }
  Response ask(const std::string& line) {
    const std::string out = line + "\n";
    if (::send(fd_, out.data(), out.size(), MSG_NOSIGNAL) != static_cast<ssize_t>(out.size())) {
      throw std::runtime_error("send");
    }
    for (;;) {
      const auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        const auto l = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        return decode_response(l);
      }
      char tmp[65536];
      const auto n = ::recv(fd_, tmp, sizeof tmp, 0);
      if (n <= 0) throw std::runtime_error("recv");
      buf_.append(tmp, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_ = -1;
  std::string buf_;
};

}  // namespace

TEST(Server, TcpConcurrentSessions) {
  const auto map = vg::test::city8();
  std::atomic<bool> stop{false};
  std::promise<int> bound;
  TcpOptions opt;
  opt.port = 0;
  opt.stop = &stop;
  opt.on_listen = [&](int p) { bound.set_value(p); };
  std::thread server([&] { serve_tcp(map, base_config(), opt); });
  const int port = bound.get_future().get();
  ASSERT_GT(port, 0);
  {
    Client a(port), b(port);
    EXPECT_EQ(body<SpecResponse>(a.ask(R"({"type":"hello"})")).protocol, "vgenv/1");
    body<SpecResponse>(b.ask(R"({"type":"hello"})"));
    const auto oa = body<ObservationResponse>(a.ask(R"({"type":"reset","seed":2})"));
    EXPECT_EQ(body<ErrorResponse>(b.ask(R"({"type":"step","action":"NOOP"})")).code, proto_err::kNoEpisode);
    const auto ob = body<ObservationResponse>(b.ask(R"({"type":"reset","seed":2})"));
    EXPECT_EQ(oa.frames, ob.frames);
    EXPECT_EQ(base64_decode(body<ObservationResponse>(a.ask(R"({"type":"step","action":"NOOP"})")).frames).size(),
              45360u);
    body<ClosedResponse>(a.ask(R"({"type":"close"})"));
  }
  stop = true;
  server.join();
}

TEST(Server, BindFailureIsIoError) {
  const auto map = vg::test::city8();
  TcpOptions opt;
  opt.host = "not-an-ip";
  EXPECT_EQ(error_code([&] { serve_tcp(map, base_config(), opt); }), errc::kIoError);
}

TEST(RemotePolicy, ShellAgentDrivesEpisode) {
  const auto map = vg::test::city8();
  auto policy = make_remote_policy(
      R"(while read -r l; do case "$l" in *'"observation"'*) echo '{"type":"step","action":"NOOP"}';; esac; done)");
  EXPECT_TRUE(policy->uses_pixels());
  auto cfg = base_config();
  cfg.horizon = 15;
  const auto r = run_episode(*policy, cfg, map);
  EXPECT_EQ(r.steps.size(), 15u);
  for (const auto& s : r.steps) EXPECT_EQ(s.action, Action::noop());
}

TEST(RemotePolicy, AgentSeesSpecFirst) {
  const auto map = vg::test::city8();
  // Turns right only if the first line was the spec message.
  auto policy = make_remote_policy(
      R"(read -r first; case "$first" in *'"spec"'*) a='TURN(+35)';; *) a=NOOP;; esac; )"
      R"(while read -r l; do case "$l" in *'"observation"'*) echo "{\"type\":\"step\",\"action\":\"$a\"}";; esac; done)");
  auto cfg = base_config();
  cfg.horizon = 3;
  const auto r = run_episode(*policy, cfg, map);
  ASSERT_FALSE(r.steps.empty());
  EXPECT_EQ(r.steps[0].action, Action::turn(35));
}

TEST(RemotePolicy, ExitingAgentIsProtocolError) {
  const auto map = vg::test::city8();
  // The failure may surface while sending the spec or on the first decision.
  EXPECT_EQ(error_code([&] {
              auto policy = make_remote_policy("exit 0");
              run_episode(*policy, base_config(), map);
            }),
            errc::kPolicyProtocol);
}

TEST(RemotePolicy, GarbageReplyIsProtocolError) {
  const auto map = vg::test::city8();
  auto policy = make_remote_policy("while read -r l; do echo nonsense; done");
  EXPECT_EQ(error_code([&] { run_episode(*policy, base_config(), map); }), errc::kPolicyProtocol);
  auto wrong = make_remote_policy(R"(while read -r l; do echo '{"type":"hello"}'; done)");
  EXPECT_EQ(error_code([&] { run_episode(*wrong, base_config(), map); }), errc::kPolicyProtocol);
  EXPECT_EQ(error_code([] { make_remote_policy(""); }), errc::kUsage);
}
