// vg: command-line front end for the navigation simulator.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vg/city_map.hpp"
#include "vg/config.hpp"
#include "vg/detect.hpp"
#include "vg/episode.hpp"
#include "vg/error.hpp"
#include "vg/eval.hpp"
#include "vg/planner.hpp"
#include "vg/policies.hpp"
#include "vg/report.hpp"
#include "vg/scenario.hpp"
#include "vg/server.hpp"
#include "vg/trajplot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flags shared by every subcommand that builds episodes.
struct EpisodeFlags {
  std::string map = "city8";
  std::string config_file;
  std::string scheme;
  std::string plan;
  std::uint64_t seed = 0;
  int horizon = 0;
  bool no_pedestrians = false;
  int supersample = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--map", map, "Map name (searched in VG_MAP_DIR) or file")->capture_default_str();
    cmd->add_option("--config", config_file, "JSON file of episode config overrides");
    cmd->add_option("--scheme", scheme, "Guidance scheme: path | waypoints | hybrid");
    cmd->add_option("--plan", plan, "Planning: one-time | real-time | real-time:<period>");
    cmd->add_option("--seed", seed, "Seed")->capture_default_str();
    cmd->add_option("--horizon", horizon, "Step limit per episode");
    cmd->add_flag("--no-pedestrians", no_pedestrians, "Run without pedestrians");
    cmd->add_option("--supersample", supersample, "Render k-times larger and downsample by majority class");
  }

  vg::EpisodeConfig build() const {
    vg::EpisodeConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw vg::Error(vg::errc::kIoError, "cannot open config file " + config_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw vg::Error(vg::errc::kParseError, config_file + ": " + e.what());
      }
      vg::apply_overrides(cfg, j);
    }
    json flags = json::object();
    if (!scheme.empty()) flags["scheme"] = scheme;
    if (!plan.empty()) flags["plan"] = plan;
    if (horizon > 0) flags["horizon"] = horizon;
    if (no_pedestrians) flags["pedestrians"] = false;
    if (supersample > 0) flags["supersample"] = supersample;
    flags["seed"] = seed;
    vg::apply_overrides(cfg, flags);
    return cfg;
  }

  vg::CityMap load() const { return vg::load_map(vg::resolve_map(map)); }
};

std::unique_ptr<vg::Policy> policy_for(const std::string& name, const std::string& remote, std::uint64_t seed) {
  if (name == "remote") return vg::make_remote_policy(remote);
  return vg::make_policy(name, seed);
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw vg::Error(vg::errc::kIoError, "cannot write " + path.string());
}

// A named point, or "x,y" in meters.
vg::Vec2 resolve_point(const vg::CityMap& map, const std::string& text) {
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    try {
      std::size_t used = 0;
      const double x = std::stod(text.substr(0, comma), &used);
      const double y = std::stod(text.substr(comma + 1));
      return {x, y};
    } catch (const std::exception&) {
      throw vg::Error(vg::errc::kUsage, "bad point '" + text + "' (expected a label or x,y)");
    }
  }
  return map.named_point(text);
}

json point_json(vg::Vec2 p) { return {p.x, p.y}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vg: urban navigation simulator with virtual guidance"};
  app.require_subcommand(1);

  // run
  EpisodeFlags run_flags;
  std::string run_from, run_to, run_policy = "pursuit", run_remote, run_log;
  bool run_steps = false;
  auto* run = app.add_subcommand("run", "Run one episode and print its result as JSON");
  run_flags.add(run);
  run->add_option("--from", run_from, "Start label")->required();
  run->add_option("--to", run_to, "Goal label")->required();
  run->add_option("--policy", run_policy, "pursuit | greedy | hybrid | random | remote")->capture_default_str();
  run->add_option("--remote", run_remote, "Agent command for --policy remote");
  run->add_flag("--steps", run_steps, "Include the per-step log and trajectory");
  run->add_option("--log", run_log, "Append the trajectory log line to this file");

  // eval
  EpisodeFlags eval_flags;
  std::string eval_scenario = "seen", eval_policy = "pursuit", eval_remote, eval_out;
  int eval_jobs = 1;
  bool eval_json = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a policy over a scenario set");
  eval_flags.add(eval);
  eval->add_option("--scenario", eval_scenario, "Scenario name (seen, unseen, train89) or file")->capture_default_str();
  eval->add_option("--policy", eval_policy, "pursuit | greedy | hybrid | random | remote")->capture_default_str();
  eval->add_option("--remote", eval_remote, "Agent command for --policy remote");
  eval->add_option("--jobs", eval_jobs, "Parallel episodes")->capture_default_str();
  eval->add_option("--out", eval_out, "Directory for report.json, report.txt and episodes.jsonl");
  eval->add_flag("--json", eval_json, "Print the report JSON instead of the table");

  // plan
  std::string plan_map = "city8", plan_from, plan_to;
  double plan_spacing = 10.0;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a path and its waypoints");
  plan_cmd->add_option("--map", plan_map, "Map name or file")->capture_default_str();
  plan_cmd->add_option("--from", plan_from, "Start label or x,y")->required();
  plan_cmd->add_option("--to", plan_to, "Goal label or x,y")->required();
  plan_cmd->add_option("--waypoints", plan_spacing, "Waypoint spacing, m")->capture_default_str();

  // render-frame
  EpisodeFlags rf_flags;
  std::string rf_from, rf_to, rf_format = "ppm", rf_out, rf_policy = "pursuit";
  int rf_steps = 0;
  auto* rf = app.add_subcommand("render-frame", "Render the agent's current segmentation frame");
  rf_flags.add(rf);
  rf->add_option("--from", rf_from, "Start label")->required();
  rf->add_option("--to", rf_to, "Goal label")->required();
  rf->add_option("--format", rf_format, "ppm | raw")->capture_default_str();
  rf->add_option("--out", rf_out, "Output file")->required();
  rf->add_option("--steps", rf_steps, "Steps to drive with --policy before rendering")->capture_default_str();
  rf->add_option("--policy", rf_policy, "Policy used for --steps")->capture_default_str();

  // serve
  EpisodeFlags serve_flags;
  std::string serve_host = "127.0.0.1", serve_from, serve_to;
  int serve_port = 5555;
  bool serve_stdio = false;
  auto* serve = app.add_subcommand("serve", "Serve the environment over the vgenv/1 protocol");
  serve_flags.add(serve);
  serve->add_option("--host", serve_host, "IPv4 address to bind")->capture_default_str();
  serve->add_option("--port", serve_port, "TCP port")->capture_default_str();
  serve->add_flag("--stdio", serve_stdio, "Serve one session on stdin/stdout");
  serve->add_option("--from", serve_from, "Default start label (random route when unset)");
  serve->add_option("--to", serve_to, "Default goal label");

  // mission
  std::string mission_dets, mission_prompt, mission_scheme = "waypoints";
  auto* mission = app.add_subcommand("mission", "Turn detections and a prompt into guidance geometry");
  mission->add_option("--detections", mission_dets, "vgdet/1 detections file")->required();
  mission->add_option("--prompt", mission_prompt, "Mission, e.g. \"purple umbrella & blue umbrella\"")->required();
  mission->add_option("--scheme", mission_scheme, "path | waypoints")->capture_default_str();

  // trajplot
  std::string tp_map = "city8", tp_logs, tp_out;
  auto* tp = app.add_subcommand("trajplot", "Draw trajectory logs over the map as SVG");
  tp->add_option("--map", tp_map, "Map name or file")->capture_default_str();
  tp->add_option("--logs", tp_logs, "JSON-lines trajectory log (omit for the map alone)");
  tp->add_option("--out", tp_out, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: UsageError: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*run) {
      const auto map = run_flags.load();
      auto cfg = run_flags.build();
      cfg.start_label = run_from;
      cfg.goal_label = run_to;
      auto policy = policy_for(run_policy, run_remote, cfg.seed);
      const auto result = vg::run_episode(*policy, cfg, map);
      std::cout << vg::result_to_json(result, run_steps).dump(2) << '\n';
      if (!run_log.empty()) {
        std::ofstream out(run_log, std::ios::app);
        if (!out) throw vg::Error(vg::errc::kIoError, "cannot open " + run_log);
        vg::write_logs(out, map.name(), {result});
      }
    } else if (*eval) {
      const auto map = eval_flags.load();
      const auto scenario = vg::load_scenario(vg::resolve_scenario(eval_scenario, map.name()));
      vg::EvalOptions opts;
      opts.base = eval_flags.build();
      opts.policy = eval_policy;
      opts.remote_command = eval_remote;
      opts.seed = eval_flags.seed;
      opts.jobs = eval_jobs;
      const auto run_result = vg::evaluate(map, scenario, opts);
      const vg::ReportHeader header{map.name(), scenario.name, std::string(vg::scheme_name(opts.base.scheme)),
                                    vg::plan_mode_name(opts.base.plan_mode), eval_policy, opts.seed};
      const auto report = vg::make_report(header, run_result.metrics, run_result.results);
      const auto table = vg::format_table(header, run_result.metrics);
      if (!eval_out.empty()) {
        fs::create_directories(eval_out);
        write_file(fs::path(eval_out) / "report.json", report.dump(2) + "\n");
        write_file(fs::path(eval_out) / "report.txt", table);
        std::ostringstream logs;
        vg::write_logs(logs, map.name(), run_result.results);
        write_file(fs::path(eval_out) / "episodes.jsonl", logs.str());
      }
      std::cout << (eval_json ? report.dump(2) + "\n" : table);
    } else if (*plan_cmd) {
      const auto map = vg::load_map(vg::resolve_map(plan_map));
      const vg::Vec2 from = resolve_point(map, plan_from);
      const vg::Vec2 to = resolve_point(map, plan_to);
      const auto path = vg::plan(map, from, to);
      const auto w = vg::extract_waypoints(path, plan_spacing);
      json pts = json::array(), wps = json::array();
      for (const auto& p : path.points) pts.push_back(point_json(p));
      for (const auto& wp : w.waypoints) wps.push_back({{"position", point_json(wp.position)}, {"arc_length", wp.arc_length}});
      const json doc = {{"schema", "vgplan/1"},
                        {"map", map.name()},
                        {"from", point_json(from)},
                        {"to", point_json(to)},
                        {"length", path.length},
                        {"cost", {{"straight", path.cost.straight}, {"diagonal", path.cost.diagonal}}},
                        {"points", pts},
                        {"waypoint_spacing", plan_spacing},
                        {"waypoints", wps}};
      std::cout << doc.dump(2) << '\n';
    } else if (*rf) {
      if (rf_format != "ppm" && rf_format != "raw") throw vg::Error(vg::errc::kUsage, "--format must be ppm or raw");
      const auto map = rf_flags.load();
      auto cfg = rf_flags.build();
      cfg.start_label = rf_from;
      cfg.goal_label = rf_to;
      vg::Episode ep(map, cfg, true);
      auto policy = vg::make_policy(rf_policy, cfg.seed);
      for (int i = 0; i < rf_steps && !ep.terminal(); ++i) {
        vg::PolicyInput in;
        in.observation = &ep.observation();
        in.agent = &ep.agent();
        in.path = &ep.path();
        in.waypoints = &ep.waypoints();
        in.hybrid = ep.hybrid();
        ep.step(policy->act(in));
      }
      const auto& frame = ep.observation().frames.back();
      write_file(rf_out, rf_format == "ppm" ? vg::frame_to_ppm(frame)
                                             : std::string(frame.pixels.begin(), frame.pixels.end()));
    } else if (*serve) {
      const auto map = serve_flags.load();
      auto cfg = serve_flags.build();
      cfg.start_label = serve_from;
      cfg.goal_label = serve_to;
      if (serve_stdio) {
        vg::serve_stream(std::cin, std::cout, map, cfg);
      } else {
        vg::TcpOptions opts;
        opts.host = serve_host;
        opts.port = serve_port;
        opts.on_listen = [&](int port) { std::cerr << "listening on " << serve_host << ":" << port << std::endl; };
        vg::serve_tcp(map, cfg, opts);
      }
    } else if (*mission) {
      const auto scheme = vg::parse_scheme(mission_scheme);
      if (!scheme) throw vg::Error(vg::errc::kUsage, "--scheme must be path or waypoints");
      const auto frame = vg::load_detections(mission_dets);
      const auto m = vg::parse_mission(mission_prompt);
      const auto resolved = vg::detections_to_waypoints(frame.detections, frame.camera, frame.pose, &m.labels);
      vg::MissionTracker tracker;
      tracker.targets = vg::compose_mission(m, resolved, frame.pose.position);
      json targets = json::array();
      for (const auto& t : tracker.targets) {
        targets.push_back({{"label", t.label}, {"position", point_json(t.position)}, {"score", t.score}});
      }
      const json doc = {{"mission", {{"op", m.op == vg::Mission::Op::All ? "all" : "any"}, {"labels", m.labels}}},
                        {"targets", targets},
                        {"reach_radius", tracker.reach_radius},
                        {"geometry", vg::geometry_to_json(vg::guidance_from_mission(tracker, *scheme, frame.pose))}};
      std::cout << doc.dump(2) << '\n';
    } else if (*tp) {
      const auto map = vg::load_map(vg::resolve_map(tp_map));
      std::vector<vg::EpisodeLog> logs;
      if (!tp_logs.empty()) {
        std::ifstream in(tp_logs);
        if (!in) throw vg::Error(vg::errc::kIoError, "cannot open " + tp_logs);
        logs = vg::parse_logs(in);
      }
      write_file(tp_out, vg::render_trajplot_svg(map, logs));
    }
  } catch (const vg::Error& e) {
    std::string msg = e.what();
    for (auto& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "error: " << e.code() << ": " << msg << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
