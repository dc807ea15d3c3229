#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>

namespace llm3::geometry {

/// Boundary tolerance for all planar predicates. Contact (zero penetration)
/// counts as non-collision, so a placement flush against a wall is legal.
inline constexpr double kGeoEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

/// Normalize an angle to (-pi, pi].
double wrap_angle(double theta);

/// Planar pose: position in meters, heading in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  Pose2 normalized() const { return {x, y, wrap_angle(theta)}; }
  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(theta);
  }
};

/// Rectangle with arbitrary planar rotation; `center.theta` is the box
/// rotation. Half-extents must be strictly positive.
struct OrientedBox2 {
  Pose2 center;
  double half_x = 0.0;
  double half_y = 0.0;

  bool is_valid() const {
    return center.is_finite() && half_x > 0.0 && half_y > 0.0;
  }
  double area() const { return 4.0 * half_x * half_y; }
  /// Radius of the circumscribed circle.
  double circumradius() const { return std::hypot(half_x, half_y); }
};

/// Physical box dimensions. Predicates operate on the (size_x, size_y)
/// top-down footprint; size_z is carried for textualization only.
struct BoxShape {
  double size_x = 0.0;
  double size_y = 0.0;
  double size_z = 0.0;

  bool is_valid() const { return size_x > 0.0 && size_y > 0.0 && size_z > 0.0; }
  double footprint_area() const { return size_x * size_y; }
};

/// Top-down footprint of a shape at a pose.
OrientedBox2 footprint(const BoxShape& shape, const Pose2& pose);

/// Map a world-frame point into the box's local frame.
Vec2 to_local(const OrientedBox2& box, const Vec2& p);

/// Map a box-local point into the world frame.
Vec2 to_world(const OrientedBox2& box, const Vec2& p);

/// Four vertices in counter-clockwise order, starting at local (+hx, +hy).
std::array<Vec2, 4> corners(const OrientedBox2& box);

/// Axis-aligned bounds of a box.
struct Aabb2 {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;

  bool contains(const Vec2& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};
Aabb2 aabb(const OrientedBox2& box);

/// True iff the interiors of the two boxes intersect. Separating-axis test
/// over the four edge normals; touching within kGeoEps is non-overlap.
bool overlap(const OrientedBox2& a, const OrientedBox2& b);

/// Signed separation between the boxes as seen by the separating-axis test:
/// positive = gap along the best separating axis, negative = penetration
/// along every candidate axis. Zero at exact contact.
double separation(const OrientedBox2& a, const OrientedBox2& b);

/// True iff all four corners of `inner` lie inside `outer`, allowing
/// kGeoEps of slack so a box flush against the boundary counts as inside.
bool contains(const OrientedBox2& outer, const OrientedBox2& inner);

/// True iff p lies strictly inside the box interior (boundary excluded
/// within kGeoEps).
bool contains_point(const OrientedBox2& box, const Vec2& p);

/// Euclidean distance from p to the box (0 when inside or on the boundary).
double distance_to_point(const OrientedBox2& box, const Vec2& p);

/// Depth of p inside the box: positive inside, negative outside (then equal
/// to -distance only along axis directions; used for interior certificates).
double interior_depth(const OrientedBox2& box, const Vec2& p);

/// Apply a rigid transform (rotation by t.theta about the origin, then
/// translation by (t.x, t.y)) to a pose or a box. Used by invariance tests.
Pose2 transformed(const Pose2& pose, const Pose2& t);
OrientedBox2 transformed(const OrientedBox2& box, const Pose2& t);

}  // namespace llm3::geometry
