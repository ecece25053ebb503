#include "vg/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "vg/config.hpp"
#include "vg/error.hpp"

namespace vg {

using nlohmann::json;

namespace {

json points(const std::vector<Vec2>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

std::vector<Vec2> parse_points(const json& j, const char* field) {
  std::vector<Vec2> out;
  for (const auto& p : j.at(field)) {
    if (!p.is_array() || p.size() != 2) throw Error(errc::kParseError, std::string(field) + ": expected [x, y] points");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

}  // namespace

json metrics_to_json(const MetricsReport& m) {
  return {{"episodes", m.episodes},
          {"spl", m.spl},
          {"success_rate", m.success_rate},
          {"line_following_rate", m.line_following_rate},
          {"waypoint_collecting_rate", m.waypoint_collecting_rate},
          {"collision_rate", m.collision_rate},
          {"oob_rate", m.oob_rate},
          {"timeout_rate", m.timeout_rate}};
}

json result_to_json(const EpisodeResult& r, bool with_steps) {
  json j = {{"start", r.start_label},
            {"goal", r.goal_label},
            {"scheme", scheme_name(r.scheme)},
            {"plan", plan_mode_name(r.plan_mode)},
            {"seed", r.seed},
            {"outcome", outcome_name(r.outcome)},
            {"steps", r.trajectory.empty() ? 0 : r.trajectory.size() - 1},
            {"shortest_length", r.shortest_length},
            {"path_length", r.path_length},
            {"line_following", r.line_following},
            {"waypoints_collected", r.waypoints_collected},
            {"waypoints_total", r.waypoints_total},
            {"cumulative_reward", r.cumulative_reward},
            {"replans", r.replans}};
  if (with_steps) {
    j["initial_plan"] = points(r.initial_plan);
    j["waypoints"] = points(r.waypoint_positions);
    j["trajectory"] = points(r.trajectory);
    json steps = json::array();
    for (const auto& s : r.steps) {
      steps.push_back({{"t", s.t},
                       {"action", action_name(s.action)},
                       {"position", {s.state.position.x, s.state.position.y}},
                       {"heading", s.state.heading},
                       {"omega", s.state.omega},
                       {"r_nav", s.reward.r_nav},
                       {"r_goal", s.reward.r_goal},
                       {"d_prime", s.d_prime},
                       {"collected", s.newly_collected},
                       {"event", event_name(s.event)}});
    }
    j["step_log"] = steps;
  }
  return j;
}

json make_report(const ReportHeader& h, const MetricsReport& m, const std::vector<EpisodeResult>& results) {
  json episodes = json::array();
  for (const auto& r : results) episodes.push_back(result_to_json(r));
  return {{"schema", kReportSchema}, {"map", h.map},       {"scenario", h.scenario},       {"scheme", h.scheme},
          {"plan", h.plan},          {"policy", h.policy}, {"seed", h.seed},               {"metrics", metrics_to_json(m)},
          {"episodes", episodes}};
}

std::string format_table(const ReportHeader& h, const MetricsReport& m) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "map=%s scenario=%s scheme=%s plan=%s policy=%s seed=%llu episodes=%d\n",
                h.map.c_str(), h.scenario.c_str(), h.scheme.c_str(), h.plan.c_str(), h.policy.c_str(),
                static_cast<unsigned long long>(h.seed), m.episodes);
  out += line;
  const std::pair<const char*, double> rows[] = {
      {"SPL", m.spl},
      {"Success rate", m.success_rate},
      {"Line following rate", m.line_following_rate},
      {"Waypoint collecting rate", m.waypoint_collecting_rate},
      {"Collision rate", m.collision_rate},
      {"Out-of-bound rate", m.oob_rate},
      {"Timeout rate", m.timeout_rate},
  };
  out += "+--------------------------+----------+\n";
  out += "| metric                   |    value |\n";
  out += "+--------------------------+----------+\n";
  for (const auto& [name, v] : rows) {
    std::snprintf(line, sizeof line, "| %-24s | %7.2f%% |\n", name, 100.0 * v);
    out += line;
  }
  out += "+--------------------------+----------+\n";
  return out;
}

EpisodeLog make_log(const std::string& map_name, const EpisodeResult& r) {
  return {map_name,      r.start_label,          r.goal_label, std::string(outcome_name(r.outcome)),
          r.initial_plan, r.waypoint_positions, r.trajectory};
}

json log_to_json(const EpisodeLog& log) {
  return {{"schema", kLogSchema},         {"map", log.map},
          {"start", log.start},           {"goal", log.goal},
          {"outcome", log.outcome},       {"plan", points(log.plan)},
          {"waypoints", points(log.waypoints)}, {"trajectory", points(log.trajectory)}};
}

void write_logs(std::ostream& out, const std::string& map_name, const std::vector<EpisodeResult>& results) {
  for (const auto& r : results) out << log_to_json(make_log(map_name, r)).dump() << '\n';
}

std::vector<EpisodeLog> parse_logs(std::istream& in) {
  std::vector<EpisodeLog> logs;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.value("schema", std::string{}) != kLogSchema) throw Error(errc::kParseError, "expected schema vglog/1");
      EpisodeLog log;
      log.map = j.at("map").get<std::string>();
      log.start = j.value("start", std::string{});
      log.goal = j.value("goal", std::string{});
      log.outcome = j.value("outcome", std::string{});
      log.plan = parse_points(j, "plan");
      log.waypoints = parse_points(j, "waypoints");
      log.trajectory = parse_points(j, "trajectory");
      logs.push_back(std::move(log));
    } catch (const json::exception& e) {
      throw Error(errc::kParseError, "log line " + std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "log line " + std::to_string(number) + ": " + e.what());
    }
  }
  return logs;
}

}  // namespace vg
