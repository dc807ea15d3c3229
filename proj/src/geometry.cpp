#include "llm3/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace llm3::geometry {

double wrap_angle(double theta) {
  const double two_pi = 2.0 * M_PI;
  double t = std::fmod(theta, two_pi);
  if (t <= -M_PI) t += two_pi;
  if (t > M_PI) t -= two_pi;
  return t;
}

OrientedBox2 footprint(const BoxShape& shape, const Pose2& pose) {
  return {pose, shape.size_x / 2.0, shape.size_y / 2.0};
}

Vec2 to_local(const OrientedBox2& box, const Vec2& p) {
  const double c = std::cos(box.center.theta);
  const double s = std::sin(box.center.theta);
  const double dx = p.x - box.center.x;
  const double dy = p.y - box.center.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Vec2 to_world(const OrientedBox2& box, const Vec2& p) {
  const double c = std::cos(box.center.theta);
  const double s = std::sin(box.center.theta);
  return {box.center.x + c * p.x - s * p.y, box.center.y + s * p.x + c * p.y};
}

std::array<Vec2, 4> corners(const OrientedBox2& box) {
  const double hx = box.half_x;
  const double hy = box.half_y;
  return {to_world(box, {hx, hy}), to_world(box, {-hx, hy}),
          to_world(box, {-hx, -hy}), to_world(box, {hx, -hy})};
}

Aabb2 aabb(const OrientedBox2& box) {
  const auto cs = corners(box);
  Aabb2 r{cs[0].x, cs[0].x, cs[0].y, cs[0].y};
  for (const auto& c : cs) {
    r.min_x = std::min(r.min_x, c.x);
    r.max_x = std::max(r.max_x, c.x);
    r.min_y = std::min(r.min_y, c.y);
    r.max_y = std::max(r.max_y, c.y);
  }
  return r;
}

namespace {

// Projection radius of a box onto a unit axis.
double projection_radius(const OrientedBox2& box, const Vec2& axis) {
  const double c = std::cos(box.center.theta);
  const double s = std::sin(box.center.theta);
  const Vec2 ux{c, s};
  const Vec2 uy{-s, c};
  return box.half_x * std::abs(axis.dot(ux)) + box.half_y * std::abs(axis.dot(uy));
}

}  // namespace

double separation(const OrientedBox2& a, const OrientedBox2& b) {
  const double ca = std::cos(a.center.theta), sa = std::sin(a.center.theta);
  const double cb = std::cos(b.center.theta), sb = std::sin(b.center.theta);
  const std::array<Vec2, 4> axes{Vec2{ca, sa}, Vec2{-sa, ca}, Vec2{cb, sb},
                                 Vec2{-sb, cb}};
  const Vec2 d = b.center.position() - a.center.position();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& axis : axes) {
    const double gap = std::abs(d.dot(axis)) -
                       (projection_radius(a, axis) + projection_radius(b, axis));
    best = std::max(best, gap);
  }
  return best;
}

bool overlap(const OrientedBox2& a, const OrientedBox2& b) {
  return separation(a, b) < -kGeoEps;
}

bool contains(const OrientedBox2& outer, const OrientedBox2& inner) {
  for (const auto& c : corners(inner)) {
    const Vec2 l = to_local(outer, c);
    if (std::abs(l.x) > outer.half_x + kGeoEps ||
        std::abs(l.y) > outer.half_y + kGeoEps) {
      return false;
    }
  }
  return true;
}

bool contains_point(const OrientedBox2& box, const Vec2& p) {
  return interior_depth(box, p) > kGeoEps;
}

double interior_depth(const OrientedBox2& box, const Vec2& p) {
  const Vec2 l = to_local(box, p);
  return std::min(box.half_x - std::abs(l.x), box.half_y - std::abs(l.y));
}

double distance_to_point(const OrientedBox2& box, const Vec2& p) {
  const Vec2 l = to_local(box, p);
  const double dx = std::max(std::abs(l.x) - box.half_x, 0.0);
  const double dy = std::max(std::abs(l.y) - box.half_y, 0.0);
  return std::hypot(dx, dy);
}

Pose2 transformed(const Pose2& pose, const Pose2& t) {
  const double c = std::cos(t.theta);
  const double s = std::sin(t.theta);
  return {t.x + c * pose.x - s * pose.y, t.y + s * pose.x + c * pose.y,
          wrap_angle(pose.theta + t.theta)};
}

OrientedBox2 transformed(const OrientedBox2& box, const Pose2& t) {
  return {transformed(box.center, t), box.half_x, box.half_y};
}

}  // namespace llm3::geometry
