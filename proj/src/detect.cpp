#include "vg/detect.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>

#include "vg/error.hpp"

namespace vg {

using nlohmann::json;

void validate_detection(const Detection& d, const CameraModel& cam) {
  auto bad = [&](const std::string& what) {
    throw Error(errc::kInvariantViolation, "detection '" + d.label + "': " + what);
  };
  if (!(d.bbox.x_min < d.bbox.x_max) || !(d.bbox.y_min < d.bbox.y_max)) bad("box must have x_min < x_max and y_min < y_max");
  if (d.bbox.x_min < 0.0 || d.bbox.y_min < 0.0 || d.bbox.x_max > cam.cols || d.bbox.y_max > cam.rows) {
    bad("box outside the " + std::to_string(cam.cols) + "x" + std::to_string(cam.rows) + " image");
  }
  if (!(d.score >= 0.0 && d.score <= 1.0)) bad("score must lie in [0, 1]");
}

DetectionFrame parse_detections(const json& doc) {
  try {
    if (!doc.is_object()) throw Error(errc::kParseError, "detections: expected a JSON object");
    const auto schema = doc.value("schema", std::string{});
    if (schema != kDetectionSchema) {
      throw Error(errc::kParseError, "schema: expected \"" + std::string(kDetectionSchema) + "\", got \"" + schema + "\"");
    }
    DetectionFrame f;
    const auto& image = doc.at("image");
    f.camera.cols = image.at("width").get<int>();
    f.camera.rows = image.at("height").get<int>();
    if (doc.contains("camera")) {
      const auto& c = doc.at("camera");
      f.camera.height = c.value("height", f.camera.height);
      f.camera.pitch = c.value("pitch", f.camera.pitch);
      f.camera.hfov = c.value("hfov", f.camera.hfov);
    }
    f.camera.validate();
    if (doc.contains("pose")) {
      const auto& p = doc.at("pose");
      const auto& pos = p.at("position");
      f.pose.position = {pos.at(0).get<double>(), pos.at(1).get<double>()};
      f.pose.heading = p.value("heading", 0.0);
    }
    for (const auto& d : doc.at("detections")) {
      Detection det;
      det.label = d.at("label").get<std::string>();
      const auto& b = d.at("bbox");
      if (!b.is_array() || b.size() != 4) throw Error(errc::kParseError, "bbox: expected [x_min, y_min, x_max, y_max]");
      det.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
      det.score = d.at("score").get<double>();
      validate_detection(det, f.camera);
      f.detections.push_back(std::move(det));
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(errc::kParseError, std::string("detections: ") + e.what());
  }
}

DetectionFrame load_detections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIoError, "cannot open detections file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(errc::kParseError, path.string() + ": " + e.what());
  }
  return parse_detections(doc);
}

json detections_to_json(const DetectionFrame& f) {
  json dets = json::array();
  for (const auto& d : f.detections) {
    dets.push_back({{"label", d.label}, {"bbox", {d.bbox.x_min, d.bbox.y_min, d.bbox.x_max, d.bbox.y_max}}, {"score", d.score}});
  }
  return {{"schema", kDetectionSchema},
          {"image", {{"width", f.camera.cols}, {"height", f.camera.rows}}},
          {"camera", {{"height", f.camera.height}, {"pitch", f.camera.pitch}, {"hfov", f.camera.hfov}}},
          {"pose", {{"position", {f.pose.position.x, f.pose.position.y}}, {"heading", f.pose.heading}}},
          {"detections", dets}};
}

std::vector<LabeledTarget> detections_to_waypoints(std::span<const Detection> dets, const CameraModel& cam,
                                                   const AgentState& pose, const std::vector<std::string>* vocabulary) {
  std::map<std::string, const Detection*> best;
  for (const auto& d : dets) {
    validate_detection(d, cam);
    if (vocabulary && std::find(vocabulary->begin(), vocabulary->end(), d.label) == vocabulary->end()) {
      throw Error(errc::kUnknownLabel, "detection label '" + d.label + "' is not part of the prompt");
    }
    auto [it, inserted] = best.emplace(d.label, &d);
    if (!inserted && d.score > it->second->score) it->second = &d;
  }
  std::vector<LabeledTarget> out;
  for (const auto& [label, d] : best) {
    // Bottom edge y_max in edge coordinates; pixel centers sit at integers.
    const double row = d->bbox.y_max - 0.5;
    const double col = (d->bbox.x_min + d->bbox.x_max) / 2.0 - 0.5;
    const auto ground = unproject_to_ground(cam, pose, row, col);
    if (!ground) {
      throw Error(errc::kNoGroundIntersection, "box of '" + label + "' ends at or above the horizon");
    }
    out.push_back({label, *ground, d->score});
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2) {
    const char q = s.front();
    // Accept straight quotes and the paired `...' style.
    if ((q == '\'' || q == '"') && s.back() == q) return trim(s.substr(1, s.size() - 2));
    if (q == '`' && s.back() == '\'') return trim(s.substr(1, s.size() - 2));
  }
  return s;
}

}  // namespace

Mission parse_mission(std::string_view expr) {
  std::string body = trim(expr);
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = trim(std::string_view(body).substr(1, body.size() - 2));
  const bool has_all = body.find('&') != std::string::npos;
  const bool has_any = body.find('|') != std::string::npos;
  if (has_all && has_any) throw Error(errc::kParseError, "mission: cannot mix '&' and '|'");
  Mission m;
  m.op = has_any ? Mission::Op::Any : Mission::Op::All;
  const char sep = has_any ? '|' : '&';
  std::size_t start = 0;
  for (;;) {
    const auto pos = body.find(sep, start);
    const std::string label = unquote(trim(std::string_view(body).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (label.empty()) throw Error(errc::kParseError, "mission: empty label in '" + std::string(expr) + "'");
    m.labels.push_back(label);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return m;
}

std::vector<LabeledTarget> compose_mission(const Mission& mission, std::span<const LabeledTarget> resolved, Vec2 from) {
  auto find = [&](const std::string& label) -> const LabeledTarget* {
    for (const auto& t : resolved) {
      if (t.label == label) return &t;
    }
    return nullptr;
  };
  std::vector<LabeledTarget> out;
  if (mission.op == Mission::Op::All) {
    for (const auto& label : mission.labels) {
      const auto* t = find(label);
      if (!t) throw Error(errc::kUnresolvedLabel, "'" + label + "' was not detected");
      out.push_back(*t);
    }
    return out;
  }
  const LabeledTarget* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& label : mission.labels) {
    const auto* t = find(label);
    if (t && distance(from, t->position) < best) {
      best = distance(from, t->position);
      nearest = t;
    }
  }
  if (!nearest) throw Error(errc::kUnresolvedLabel, "none of the mission labels was detected");
  out.push_back(*nearest);
  return out;
}

int MissionTracker::update(Vec2 p) {
  int reached = 0;
  while (!done() && distance(p, targets[current].position) <= reach_radius) {
    ++current;
    ++reached;
  }
  return reached;
}

GuidanceGeometry guidance_from_mission(const MissionTracker& tracker, GuidanceScheme scheme, const AgentState& agent,
                                       double sphere_radius) {
  GuidanceGeometry g;
  g.scheme = scheme;
  if (tracker.done()) return g;
  if (scheme == GuidanceScheme::Waypoints) {
    for (std::size_t i = tracker.current; i < tracker.targets.size(); ++i) {
      g.spheres.push_back({tracker.targets[i].position, sphere_radius});
    }
  } else if (scheme == GuidanceScheme::Path) {
    g.path_polyline = Polyline{agent.position, tracker.targets[tracker.current].position};
  }
  return g;
}

json geometry_to_json(const GuidanceGeometry& g) {
  json out = {{"scheme", scheme_name(g.scheme)}};
  if (g.path_polyline) {
    json pts = json::array();
    for (const auto& p : *g.path_polyline) pts.push_back({p.x, p.y});
    out["path_polyline"] = pts;
  } else {
    out["path_polyline"] = nullptr;
  }
  json spheres = json::array();
  for (const auto& s : g.spheres) spheres.push_back({{"center", {s.center.x, s.center.y}}, {"radius", s.radius}});
  out["spheres"] = spheres;
  return out;
}

}  // namespace vg
