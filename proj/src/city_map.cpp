#include "vg/city_map.hpp"

#include <cmath>
#include <fstream>

#include "vg/error.hpp"

namespace vg {

using nlohmann::json;

namespace {

[[noreturn]] void invariant(const std::string& field, const std::string& what) {
  throw Error(errc::kInvariantViolation, field + ": " + what);
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(errc::kParseError, what); }

Vec2 parse_point(const json& j, const std::string& field) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("x") && j.contains("y")) {
    return {j.at("x").get<double>(), j.at("y").get<double>()};
  }
  parse_fail(field + ": expected [x, y]");
}

SemanticClass parse_class_name(const std::string& name) {
  auto c = class_from_name(name);
  if (!c) parse_fail("classes: unknown class name '" + name + "'");
  return *c;
}

std::vector<SemanticClass> parse_classes(const json& j, std::size_t expected) {
  std::vector<SemanticClass> out;
  out.reserve(expected);
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(parse_class_name(e.get<std::string>()));
  } else if (j.is_object() && j.contains("rle")) {
    for (const auto& run : j.at("rle")) {
      if (!run.is_array() || run.size() != 2) parse_fail("classes.rle: expected [name, count] pairs");
      const auto cls = parse_class_name(run[0].get<std::string>());
      const auto count = run[1].get<long long>();
      if (count <= 0) parse_fail("classes.rle: run length must be positive");
      out.insert(out.end(), static_cast<std::size_t>(count), cls);
      if (out.size() > expected) break;
    }
  } else {
    parse_fail("classes: expected an array of class names or {\"rle\": [...]}");
  }
  if (out.size() != expected) {
    invariant("classes", "expected " + std::to_string(expected) + " cells, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

Vec2 pedestrian_pose(const Pedestrian& ped, double t) {
  Polyline pts = ped.path;
  if (ped.closed && !pts.empty()) pts.push_back(pts.front());
  const double length = polyline_length(pts);
  if (length <= 0.0) return pts.empty() ? Vec2{} : pts.front();

  const double s = ped.phase + ped.speed * t;
  if (ped.closed) {
    double m = std::fmod(s, length);
    if (m < 0.0) m += length;
    return point_at_arc_length(pts, m);
  }
  double m = std::fmod(s, 2.0 * length);
  if (m < 0.0) m += 2.0 * length;
  return point_at_arc_length(pts, m <= length ? m : 2.0 * length - m);
}

std::size_t RoadGraph::intersection_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.intersection ? 1 : 0;
  return n;
}

CityMap::CityMap(Spec spec) : s_(std::move(spec)) {
  if (!(s_.cell_size > 0.0) || !std::isfinite(s_.cell_size)) invariant("cell_size", "must be > 0");
  if (s_.width <= 0 || s_.height <= 0) invariant("width/height", "width*height must be > 0");
  if (!(s_.building_height > 0.0)) invariant("building_height", "must be > 0");
  const auto cells = static_cast<std::size_t>(s_.width) * static_cast<std::size_t>(s_.height);
  if (s_.classes.size() != cells) invariant("classes", "size does not match width*height");

  for (const auto& [label, p] : s_.named_points) {
    if (query_class(*this, p) != SemanticClass::Road) {
      invariant("named_points." + label, "does not lie on a Road cell");
    }
  }
  for (std::size_t i = 0; i < s_.road_graph.edges.size(); ++i) {
    const auto [a, b] = s_.road_graph.edges[i];
    const auto n = s_.road_graph.nodes.size();
    if (a >= n || b >= n) invariant("road_graph.edges[" + std::to_string(i) + "]", "unknown node");
    for (auto idx : {a, b}) {
      if (query_class(*this, s_.road_graph.nodes[idx].position) != SemanticClass::Road) {
        invariant("road_graph.nodes." + s_.road_graph.nodes[idx].id, "edge endpoint does not lie on a Road cell");
      }
    }
  }
  for (std::size_t i = 0; i < s_.pedestrians.size(); ++i) {
    const auto& ped = s_.pedestrians[i];
    const std::string field = "pedestrians[" + std::to_string(i) + "]";
    if (ped.path.size() < 2) invariant(field + ".path", "needs at least 2 points");
    if (!(ped.speed >= 0.0)) invariant(field + ".speed", "must be >= 0");
    if (!(ped.radius > 0.0)) invariant(field + ".radius", "must be > 0");
  }
}

Bounds CityMap::bounds() const {
  return {s_.origin, s_.origin + Vec2{s_.width * s_.cell_size, s_.height * s_.cell_size}};
}

Vec2 CityMap::named_point(const std::string& label) const {
  auto it = s_.named_points.find(label);
  if (it == s_.named_points.end()) throw Error(errc::kUnknownLabel, "unknown named point '" + label + "'");
  return it->second;
}

std::optional<CellIndex> CityMap::cell_of(Vec2 p) const {
  const double fx = std::floor((p.x - s_.origin.x) / s_.cell_size);
  const double fy = std::floor((p.y - s_.origin.y) / s_.cell_size);
  if (!(fx >= 0.0 && fy >= 0.0 && fx < s_.width && fy < s_.height)) return std::nullopt;
  return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
}

Vec2 CityMap::cell_center(CellIndex c) const {
  return {s_.origin.x + (c.col + 0.5) * s_.cell_size, s_.origin.y + (c.row + 0.5) * s_.cell_size};
}

SemanticClass CityMap::class_at(CellIndex c) const {
  if (!in_grid(c)) return SemanticClass::Void;
  return s_.classes[static_cast<std::size_t>(linear_index(c))];
}

SemanticClass query_class(const CityMap& map, Vec2 p) {
  const auto cell = map.cell_of(p);
  return cell ? map.class_at(*cell) : SemanticClass::Void;
}

CityMap parse_map(const json& doc) {
  try {
    if (!doc.is_object()) parse_fail("map document must be a JSON object");
    const auto schema = doc.value("schema", std::string{});
    if (schema != kMapSchema) parse_fail("schema: expected \"" + std::string(kMapSchema) + "\", got \"" + schema + "\"");

    CityMap::Spec spec;
    spec.name = doc.value("name", std::string{"unnamed"});
    spec.cell_size = doc.at("cell_size").get<double>();
    spec.width = doc.at("width").get<int>();
    spec.height = doc.at("height").get<int>();
    if (doc.contains("origin")) spec.origin = parse_point(doc.at("origin"), "origin");
    spec.building_height = doc.value("building_height", 12.0);
    if (spec.width <= 0 || spec.height <= 0) invariant("width/height", "width*height must be > 0");
    spec.classes = parse_classes(doc.at("classes"),
                                 static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height));

    if (doc.contains("road_graph")) {
      const auto& g = doc.at("road_graph");
      std::map<std::string, std::size_t> ids;
      for (const auto& n : g.value("nodes", json::array())) {
        RoadNode node;
        node.id = n.at("id").get<std::string>();
        node.position = parse_point(n.at("position"), "road_graph.nodes." + node.id);
        node.intersection = n.value("kind", std::string{"junction"}) == "intersection";
        if (!ids.emplace(node.id, spec.road_graph.nodes.size()).second) {
          invariant("road_graph.nodes." + node.id, "duplicate id");
        }
        spec.road_graph.nodes.push_back(std::move(node));
      }
      for (const auto& e : g.value("edges", json::array())) {
        const auto a = e.at(0).get<std::string>();
        const auto b = e.at(1).get<std::string>();
        if (!ids.contains(a) || !ids.contains(b)) invariant("road_graph.edges", "unknown node id " + a + "/" + b);
        spec.road_graph.edges.emplace_back(ids.at(a), ids.at(b));
      }
    }
    const json named = doc.value("named_points", json::object());
    for (const auto& [label, p] : named.items()) {
      spec.named_points[label] = parse_point(p, "named_points." + label);
    }
    for (const auto& pj : doc.value("pedestrians", json::array())) {
      Pedestrian ped;
      for (const auto& p : pj.at("path")) ped.path.push_back(parse_point(p, "pedestrians.path"));
      ped.closed = pj.value("closed", false);
      ped.speed = pj.value("speed", ped.speed);
      ped.radius = pj.value("radius", ped.radius);
      ped.phase = pj.value("phase", 0.0);
      spec.pedestrians.push_back(std::move(ped));
    }
    return CityMap(std::move(spec));
  } catch (const json::exception& e) {
    throw Error(errc::kParseError, std::string("map: ") + e.what());
  }
}

CityMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIoError, "cannot open map file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(errc::kParseError, path.string() + ": " + e.what());
  }
  return parse_map(doc);
}

json map_to_json(const CityMap& map) {
  json rle = json::array();
  const auto& cls = map.classes();
  for (std::size_t i = 0; i < cls.size();) {
    std::size_t j = i;
    while (j < cls.size() && cls[j] == cls[i]) ++j;
    rle.push_back({std::string(class_name(cls[i])), j - i});
    i = j;
  }
  json nodes = json::array();
  for (const auto& n : map.road_graph().nodes) {
    nodes.push_back({{"id", n.id},
                     {"position", {n.position.x, n.position.y}},
                     {"kind", n.intersection ? "intersection" : "junction"}});
  }
  json edges = json::array();
  for (const auto& [a, b] : map.road_graph().edges) {
    edges.push_back({map.road_graph().nodes[a].id, map.road_graph().nodes[b].id});
  }
  json named = json::object();
  for (const auto& [label, p] : map.named_points()) named[label] = {p.x, p.y};
  json peds = json::array();
  for (const auto& ped : map.pedestrians()) {
    json path = json::array();
    for (const auto& p : ped.path) path.push_back({p.x, p.y});
    peds.push_back({{"path", path}, {"closed", ped.closed}, {"speed", ped.speed}, {"radius", ped.radius}, {"phase", ped.phase}});
  }
  return {{"schema", kMapSchema},
          {"name", map.name()},
          {"cell_size", map.cell_size()},
          {"width", map.width()},
          {"height", map.height()},
          {"origin", {map.origin().x, map.origin().y}},
          {"building_height", map.building_height()},
          {"classes", {{"rle", rle}}},
          {"road_graph", {{"nodes", nodes}, {"edges", edges}}},
          {"named_points", named},
          {"pedestrians", peds}};
}

}  // namespace vg
