#include <cerrno>
#include <csignal>
#include <cstring>

#include <sys/wait.h>
#include <unistd.h>

#include "fdio.hpp"
#include "vg/base64.hpp"
#include "vg/error.hpp"
#include "vg/policies.hpp"
#include "vg/protocol.hpp"

namespace vg {

namespace {

class RemotePolicy final : public Policy {
 public:
  explicit RemotePolicy(const std::string& command) : command_(command) {
    // A child that exits early must surface as an error, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0) fail("pipe: " + std::string(std::strerror(errno)));
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      fail("pipe: " + std::string(std::strerror(errno)));
    }
    pid_ = ::fork();
    if (pid_ < 0) fail("fork: " + std::string(std::strerror(errno)));
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = to_child[1];
    out_ = from_child[0];
    reader_.emplace(out_);
    send(encode(Response{std::nullopt, standard_spec()}));
  }

  ~RemotePolicy() override {
    if (in_ >= 0) {
      detail::write_all(in_, encode(Response{std::nullopt, ClosedResponse{}}) + '\n');
      ::close(in_);
    }
    if (out_ >= 0) ::close(out_);
    if (pid_ > 0) ::waitpid(pid_, nullptr, 0);
  }

  Action act(const PolicyInput& in) override {
    if (!in.observation || !in.agent) fail("remote policies need rendered observations");
    ObservationResponse o;
    o.t = in.agent->t;
    o.frames = base64_encode(in.observation->bytes());
    o.hybrid_vector = in.hybrid;
    o.reward = in.last_reward;
    if (in.waypoints) {
      o.waypoints_collected = static_cast<int>(in.waypoints->collected_count());
      o.waypoints_total = static_cast<int>(in.waypoints->waypoints.size());
    }
    send(encode(Response{std::nullopt, o}));

    auto line = reader_->next();
    if (!line) fail("agent process closed its output");
    Request req;
    try {
      req = decode_request(*line);
    } catch (const Error& e) {
      fail(std::string("bad reply: ") + e.what());
    }
    const auto* step = std::get_if<StepRequest>(&req.body);
    if (!step) fail("expected a step request, got: " + *line);
    const auto action = parse_action(step->action);
    if (!action) fail("unknown action '" + step->action + "'");
    return *action;
  }

  bool uses_pixels() const override { return true; }
  std::string name() const override { return "remote"; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(errc::kPolicyProtocol, "remote policy '" + command_ + "': " + what);
  }

  void send(const std::string& line) {
    if (!detail::write_all(in_, line + '\n')) fail("agent process closed its input");
  }

  std::string command_;
  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::optional<detail::LineReader> reader_;
};

}  // namespace

std::unique_ptr<Policy> make_remote_policy(const std::string& command) {
  if (command.empty()) throw Error(errc::kUsage, "remote policy needs a command");
  return std::make_unique<RemotePolicy>(command);
}

}  // namespace vg
