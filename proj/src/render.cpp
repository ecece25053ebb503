#include "vg/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vg/error.hpp"

namespace vg {

namespace {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

double dot3(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Camera frame in world coordinates.
struct CameraFrame {
  Vec3 origin;
  Vec3 right;
  Vec3 down;
  Vec3 forward;
};

CameraFrame camera_frame(const CameraModel& cam, const AgentState& agent) {
  const double h = deg2rad(agent.heading);
  const double th = deg2rad(cam.pitch);
  const double ch = std::cos(h), sh = std::sin(h);
  const double ct = std::cos(th), st = std::sin(th);
  CameraFrame f;
  f.origin = {agent.position.x, agent.position.y, cam.height};
  f.right = {sh, -ch, 0.0};
  f.forward = {ct * ch, ct * sh, -st};
  f.down = {-st * ch, -st * sh, -ct};
  return f;
}

struct Buffer {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cls;
  std::vector<double> depth;

  Buffer(int r, int c)
      : rows(r), cols(c), cls(static_cast<std::size_t>(r) * c, class_id(SemanticClass::Void)),
        depth(static_cast<std::size_t>(r) * c, std::numeric_limits<double>::infinity()) {}
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * cols + c; }
};

struct Segment {
  Vec2 a, b;
  Vec2 lo, hi;  // bounding box
};

// Walks the ray's ground-plane projection through the grid. Returns the class
// and depth of the first visible surface (building wall or ground).
struct RayHit {
  SemanticClass cls = SemanticClass::Void;
  double depth = std::numeric_limits<double>::infinity();
  bool ground = false;
  Vec2 ground_point;
};

RayHit cast_ray(const CityMap& map, const CameraModel& cam, const Vec3& o, const Vec3& dir) {
  RayHit hit;
  const double cs = map.cell_size();
  const Vec2 org = map.origin();
  const int W = map.width(), H = map.height();

  const bool descends = dir.z < 0.0;
  const double t_ground = descends ? o.z / -dir.z : std::numeric_limits<double>::infinity();
  const double t_end = std::min(t_ground, cam.far_plane);

  // Grid-space ray.
  const double px = (o.x - org.x) / cs, py = (o.y - org.y) / cs;
  const double dx = dir.x / cs, dy = dir.y / cs;

  // Clip against the grid rectangle [0,W] x [0,H].
  double t0 = 0.0, t1 = t_end;
  auto clip = [&](double p, double d, double hi) {
    if (d == 0.0) return p >= 0.0 && p < hi;
    double a = (0.0 - p) / d, b = (hi - p) / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return t0 <= t1;
  };
  const bool inside = clip(px, dx, W) && clip(py, dy, H);

  if (inside) {
    double t = t0;
    int cx = std::clamp(static_cast<int>(std::floor(px + dx * t)), 0, W - 1);
    int cy = std::clamp(static_cast<int>(std::floor(py + dy * t)), 0, H - 1);
    const int step_x = dx > 0 ? 1 : -1;
    const int step_y = dy > 0 ? 1 : -1;
    const double delta_x = dx != 0.0 ? 1.0 / std::abs(dx) : std::numeric_limits<double>::infinity();
    const double delta_y = dy != 0.0 ? 1.0 / std::abs(dy) : std::numeric_limits<double>::infinity();
    double next_x = dx != 0.0 ? ((dx > 0 ? cx + 1 : cx) - px) / dx : std::numeric_limits<double>::infinity();
    double next_y = dy != 0.0 ? ((dy > 0 ? cy + 1 : cy) - py) / dy : std::numeric_limits<double>::infinity();

    for (;;) {
      const SemanticClass c = map.class_at(cx, cy);
      if (c == SemanticClass::Building && o.z + dir.z * t <= map.building_height()) {
        hit.cls = SemanticClass::Building;
        hit.depth = std::max(t, cam.near_plane);
        return hit;
      }
      const double t_next = std::min(next_x, next_y);
      if (t_next >= t1) {
        if (t_ground <= t1 && t_ground <= cam.far_plane) {
          hit.cls = c;
          hit.depth = t_ground;
          hit.ground = true;
          hit.ground_point = {o.x + dir.x * t_ground, o.y + dir.y * t_ground};
        }
        return hit;
      }
      t = t_next;
      if (next_x < next_y) {
        cx += step_x;
        next_x += delta_x;
      } else {
        cy += step_y;
        next_y += delta_y;
      }
      if (cx < 0 || cy < 0 || cx >= W || cy >= H) break;
    }
  }
  return hit;  // left the grid: Void ground or sky
}

void render_into(Buffer& buf, const CityMap& map, std::span<const Vec2> peds, const AgentState& agent,
                 const GuidanceGeometry& geometry, const CameraModel& cam, const RenderOptions& opt) {
  const CameraFrame fr = camera_frame(cam, agent);
  const double f = cam.focal_px();
  const double cx = cam.cx(), cy = cam.cy();

  std::vector<Segment> segments;
  if (geometry.path_polyline) {
    const auto& pl = *geometry.path_polyline;
    for (std::size_t i = 1; i < pl.size(); ++i) {
      segments.push_back({pl[i - 1], pl[i], {std::min(pl[i - 1].x, pl[i].x), std::min(pl[i - 1].y, pl[i].y)},
                          {std::max(pl[i - 1].x, pl[i].x), std::max(pl[i - 1].y, pl[i].y)}});
    }
    if (pl.size() == 1) segments.push_back({pl[0], pl[0], pl[0], pl[0]});
  }
  const double half_ribbon = opt.ribbon_width / 2.0;

  // Ground, walls and the guidance ribbon.
  for (int r = 0; r < buf.rows; ++r) {
    const double b = (r - cy) / f;
    for (int c = 0; c < buf.cols; ++c) {
      const double a = (c - cx) / f;
      const Vec3 dir{fr.forward.x + a * fr.right.x + b * fr.down.x, fr.forward.y + a * fr.right.y + b * fr.down.y,
                     fr.forward.z + a * fr.right.z + b * fr.down.z};
      RayHit hit = cast_ray(map, cam, fr.origin, dir);
      if (hit.ground && !segments.empty()) {
        const Vec2 g = hit.ground_point;
        for (const auto& s : segments) {
          if (g.x < s.lo.x - half_ribbon || g.x > s.hi.x + half_ribbon || g.y < s.lo.y - half_ribbon ||
              g.y > s.hi.y + half_ribbon) {
            continue;
          }
          if (distance_to_segment(s.a, s.b, g) <= half_ribbon) {
            hit.cls = SemanticClass::GuidancePath;
            break;
          }
        }
      }
      buf.cls[buf.idx(r, c)] = class_id(hit.cls);
      buf.depth[buf.idx(r, c)] = hit.depth;
    }
  }

  // Depth-tested billboards, farthest first.
  struct Billboard {
    SemanticClass cls;
    double depth;
    double u;           // horizontal offset from cx, px
    double half_w;      // px
    double v_top, v_bottom;  // vertical offsets from cy, px
    bool disc;          // sphere: circle of radius half_w centered at (u, v_top)
  };
  std::vector<Billboard> boards;
  auto to_cam = [&](Vec2 p, double elev) {
    const Vec3 d{p.x - fr.origin.x, p.y - fr.origin.y, elev - fr.origin.z};
    return Vec3{dot3(d, fr.right), dot3(d, fr.down), dot3(d, fr.forward)};
  };
  for (const Vec2& p : peds) {
    const Vec3 base = to_cam(p, 0.0);
    const Vec3 top = to_cam(p, opt.pedestrian_height);
    if (base.z <= cam.near_plane || top.z <= cam.near_plane) continue;
    boards.push_back({SemanticClass::Pedestrian, base.z - opt.pedestrian_width / 2.0, f * base.x / base.z,
                      f * (opt.pedestrian_width / 2.0) / base.z, f * top.y / top.z, f * base.y / base.z, false});
  }
  for (const auto& s : geometry.spheres) {
    const Vec3 ctr = to_cam(s.center, s.radius);
    if (ctr.z <= cam.near_plane) continue;
    boards.push_back({SemanticClass::WaypointMarker, ctr.z - s.radius, f * ctr.x / ctr.z, f * s.radius / ctr.z,
                      f * ctr.y / ctr.z, 0.0, true});
  }
  std::stable_sort(boards.begin(), boards.end(), [](const Billboard& x, const Billboard& y) { return x.depth > y.depth; });

  for (const auto& bb : boards) {
    const double v_lo = bb.disc ? bb.v_top - bb.half_w : bb.v_top;
    const double v_hi = bb.disc ? bb.v_top + bb.half_w : bb.v_bottom;
    const int r0 = std::max(0, static_cast<int>(std::floor(v_lo + cy)));
    const int r1 = std::min(buf.rows - 1, static_cast<int>(std::ceil(v_hi + cy)));
    const int c0 = std::max(0, static_cast<int>(std::floor(bb.u - bb.half_w + cx)));
    const int c1 = std::min(buf.cols - 1, static_cast<int>(std::ceil(bb.u + bb.half_w + cx)));
    for (int r = r0; r <= r1; ++r) {
      const double vr = r - cy;
      for (int c = c0; c <= c1; ++c) {
        const double uc = c - cx;
        bool covered;
        if (bb.disc) {
          const double du = uc - bb.u, dv = vr - bb.v_top;
          covered = du * du + dv * dv <= bb.half_w * bb.half_w;
        } else {
          covered = std::abs(uc - bb.u) <= bb.half_w && vr >= bb.v_top && vr <= bb.v_bottom;
        }
        if (!covered) continue;
        const auto i = buf.idx(r, c);
        if (bb.depth < buf.depth[i]) {
          buf.depth[i] = bb.depth;
          buf.cls[i] = class_id(bb.cls);
        }
      }
    }
  }
}

}  // namespace

void CameraModel::validate() const {
  if (!(hfov > 0.0 && hfov < 180.0)) throw Error(errc::kInvariantViolation, "camera.hfov: must be in (0, 180)");
  if (!(height > 0.0)) throw Error(errc::kInvariantViolation, "camera.height: must be > 0");
  if (!(near_plane > 0.0)) throw Error(errc::kInvariantViolation, "camera.near_plane: must be > 0");
  if (!(far_plane > near_plane)) throw Error(errc::kInvariantViolation, "camera.far_plane: must exceed near_plane");
  if (cols <= 0 || rows <= 0) throw Error(errc::kInvariantViolation, "camera.cols/rows: must be > 0");
}

double CameraModel::focal_px() const { return (cols / 2.0) / std::tan(deg2rad(hfov) / 2.0); }

std::optional<PixelHit> project(const CameraModel& cam, const AgentState& agent, Vec2 p, double elevation) {
  const CameraFrame fr = camera_frame(cam, agent);
  const Vec3 d{p.x - fr.origin.x, p.y - fr.origin.y, elevation - fr.origin.z};
  const double z = dot3(d, fr.forward);
  if (z < cam.near_plane) return std::nullopt;
  const double f = cam.focal_px();
  PixelHit hit{cam.cy() + f * dot3(d, fr.down) / z, cam.cx() + f * dot3(d, fr.right) / z, z};
  if (hit.col < -0.5 || hit.col >= cam.cols - 0.5 || hit.row < -0.5 || hit.row >= cam.rows - 0.5) return std::nullopt;
  return hit;
}

std::optional<Vec2> unproject_to_ground(const CameraModel& cam, const AgentState& agent, double row, double col) {
  const CameraFrame fr = camera_frame(cam, agent);
  const double f = cam.focal_px();
  const double a = (col - cam.cx()) / f, b = (row - cam.cy()) / f;
  const Vec3 dir{fr.forward.x + a * fr.right.x + b * fr.down.x, fr.forward.y + a * fr.right.y + b * fr.down.y,
                 fr.forward.z + a * fr.right.z + b * fr.down.z};
  if (!(dir.z < 0.0)) return std::nullopt;
  const double t = fr.origin.z / -dir.z;
  return Vec2{fr.origin.x + dir.x * t, fr.origin.y + dir.y * t};
}

std::size_t SegFrame::count(SemanticClass c) const {
  return static_cast<std::size_t>(std::count(pixels.begin(), pixels.end(), class_id(c)));
}

ObservationStack ObservationStack::reset(const SegFrame& f) {
  ObservationStack s;
  s.frames.fill(f);
  return s;
}

ObservationStack ObservationStack::push(const SegFrame& f) const {
  ObservationStack s;
  for (int i = 0; i + 1 < kStackDepth; ++i) s.frames[i] = frames[i + 1];
  s.frames[kStackDepth - 1] = f;
  return s;
}

std::vector<std::uint8_t> ObservationStack::bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(kFrameBytes * kStackDepth);
  for (const auto& f : frames) out.insert(out.end(), f.pixels.begin(), f.pixels.end());
  return out;
}

SegFrame render_frame(const CityMap& map, std::span<const Vec2> pedestrian_positions, const AgentState& agent,
                      const GuidanceGeometry& geometry, const CameraModel& cam, const RenderOptions& options) {
  cam.validate();
  if (cam.cols != kFrameCols || cam.rows != kFrameRows) {
    throw Error(errc::kInvariantViolation, "camera: frames are 84x180");
  }
  SegFrame frame;
  const int k = std::max(1, options.supersample);
  if (k == 1) {
    Buffer buf(kFrameRows, kFrameCols);
    render_into(buf, map, pedestrian_positions, agent, geometry, cam, options);
    std::copy(buf.cls.begin(), buf.cls.end(), frame.pixels.begin());
    return frame;
  }

  CameraModel big = cam;
  big.cols = cam.cols * k;
  big.rows = cam.rows * k;
  Buffer buf(big.rows, big.cols);
  render_into(buf, map, pedestrian_positions, agent, geometry, big, options);
  for (int r = 0; r < kFrameRows; ++r) {
    for (int c = 0; c < kFrameCols; ++c) {
      std::array<int, kNumClasses> votes{};
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) ++votes[buf.cls[buf.idx(r * k + i, c * k + j)]];
      }
      // Ties go to the lower class id.
      const auto best = std::max_element(votes.begin(), votes.end()) - votes.begin();
      frame.pixels[r * kFrameCols + c] = static_cast<std::uint8_t>(best);
    }
  }
  return frame;
}

std::string frame_to_ppm(const SegFrame& f) {
  std::string out = "P6\n" + std::to_string(kFrameCols) + " " + std::to_string(kFrameRows) + "\n255\n";
  out.reserve(out.size() + kFrameBytes * 3);
  for (auto id : f.pixels) {
    const Rgb rgb = kPalette[id].color;
    out.push_back(static_cast<char>(rgb.r));
    out.push_back(static_cast<char>(rgb.g));
    out.push_back(static_cast<char>(rgb.b));
  }
  return out;
}

}  // namespace vg
