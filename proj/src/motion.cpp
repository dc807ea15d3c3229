#include "llm3/motion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace llm3::motion {

using geometry::contains_point;
using geometry::kGeoEps;

std::string render_feedback(const MotionFeedback& f) { return f.text; }

MotionFeedback make_collision_feedback(const std::string& object) {
  return {MotionFeedback::Kind::kCollisionWithObject, object,
          "The goal configuration is in collision with " + object + "."};
}

MotionFeedback make_unreachable_feedback() {
  return {MotionFeedback::Kind::kUnreachable, {},
          "The goal configuration has no feasible IK solution."};
}

MotionFeedback make_feasible_feedback() {
  return {MotionFeedback::Kind::kFeasible, {},
          "The goal configuration is collision-free and reachable."};
}

bool check_reachable(const world::WorldState& s, const Pose2& target) {
  const double d = std::hypot(target.x - s.robot_base.x, target.y - s.robot_base.y);
  return d >= s.reach_min - kGeoEps && d <= s.reach_max + kGeoEps;
}

namespace {

Pose2 action_target(const world::WorldState& s, const actions::GroundAction& a) {
  if (a.schema == "place") {
    return Pose2{a.params.at("x"), a.params.at("y"), a.params.at("theta")}
        .normalized();
  }
  const world::ObjectState* o = s.find_object(a.objects.front());
  return o ? o->pose : Pose2{};
}

}  // namespace

std::optional<std::string> check_goal_collision(const world::WorldState& s,
                                                const actions::GroundAction& a) {
  const std::string& obj = a.objects.front();
  OrientedBox2 moving;
  if (a.schema == "place") {
    const world::ObjectState* held = s.find_object(obj);
    moving = geometry::footprint(held->shape, action_target(s, a));
  } else {
    const world::ObjectState* target = s.find_object(obj);
    moving = {target->pose, kGripperWidth / 2, kGripperWidth / 2};
  }
  for (const auto& o : s.objects) {  // name-sorted
    if (o.name == obj || o.held) continue;
    if (geometry::overlap(moving, o.footprint())) return o.name;
  }
  if (a.schema == "place") {
    for (const auto& [name, wall] : basket_walls(s)) {
      if (geometry::overlap(moving, wall)) return name;
    }
  }
  return std::nullopt;
}

namespace {

struct Tree {
  std::vector<Vec2> pts;
  std::vector<int> parent;

  void add(const Vec2& p, int par) {
    pts.push_back(p);
    parent.push_back(par);
  }
  int nearest(const Vec2& q) const {
    int best = 0;
    double best_d = (pts[0] - q).dot(pts[0] - q);
    for (size_t i = 1; i < pts.size(); ++i) {
      const double d = (pts[i] - q).dot(pts[i] - q);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }
  std::vector<Vec2> chain(int idx) const {  // root .. idx
    std::vector<Vec2> out;
    for (int i = idx; i >= 0; i = parent[i]) out.push_back(pts[i]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

enum class Extend { kTrapped, kAdvanced, kReached };

using Validity = std::function<bool(const Vec2&)>;

// Endpoint + midpoint check; segments are kept at most step_size long so
// this resolution bounds the miss.
bool segment_ok(const Vec2& from, const Vec2& to, const Validity& valid) {
  const Vec2 mid = (from + to) * 0.5;
  return valid(mid) && valid(to);
}

// Long segments (shortcuts) are subdivided to step_size first.
bool long_segment_ok(const Vec2& from, const Vec2& to, double step,
                     const Validity& valid) {
  const double len = (to - from).norm();
  const int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
  Vec2 prev = from;
  for (int i = 1; i <= pieces; ++i) {
    const double t = static_cast<double>(i) / pieces;
    const Vec2 next = from + (to - from) * t;
    if (!segment_ok(prev, next, valid)) return false;
    prev = next;
  }
  return true;
}

std::pair<Extend, int> extend_tree(Tree& tree, const Vec2& target, double step,
                                   const Validity& valid) {
  const int near = tree.nearest(target);
  const Vec2 from = tree.pts[near];
  const Vec2 d = target - from;
  const double dist = d.norm();
  if (dist < 1e-12) return {Extend::kReached, near};
  const bool reaching = dist <= step;
  const Vec2 q_new = reaching ? target : from + d * (step / dist);
  if (!segment_ok(from, q_new, valid)) return {Extend::kTrapped, near};
  tree.add(q_new, near);
  return {reaching ? Extend::kReached : Extend::kAdvanced,
          static_cast<int>(tree.pts.size()) - 1};
}

std::pair<Extend, int> connect_tree(Tree& tree, const Vec2& target, double step,
                                    const Validity& valid) {
  while (true) {
    auto [status, idx] = extend_tree(tree, target, step, valid);
    if (status != Extend::kAdvanced) return {status, idx};
  }
}

std::vector<Vec2> shortcut(std::vector<Vec2> path, double step,
                           const Validity& valid, std::mt19937_64& rng,
                           int attempts) {
  for (int k = 0; k < attempts && path.size() > 2; ++k) {
    size_t i, j;
    if (k == 0) {  // always try the straight shot first
      i = 0;
      j = path.size() - 1;
    } else {
      std::uniform_int_distribution<size_t> pick(0, path.size() - 1);
      i = pick(rng);
      j = pick(rng);
      if (i > j) std::swap(i, j);
      if (j - i < 2) continue;
    }
    if (long_segment_ok(path[i], path[j], step, valid)) {
      path.erase(path.begin() + static_cast<long>(i) + 1,
                 path.begin() + static_cast<long>(j));
    }
  }
  return path;
}

std::vector<Vec2> rediscretize(const std::vector<Vec2>& path, double step) {
  std::vector<Vec2> out;
  out.push_back(path.front());
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2& from = path[i];
    const Vec2& to = path[i + 1];
    const double len = (to - from).norm();
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int p = 1; p <= pieces; ++p) {
      out.push_back(from + (to - from) * (static_cast<double>(p) / pieces));
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<Vec2>> birrt_points(const Vec2& start,
                                              const Vec2& goal,
                                              const Validity& valid,
                                              const RrtParams& params) {
  if (!valid(start) || !valid(goal)) return std::nullopt;

  const double step = params.step_size;
  if ((goal - start).norm() < 1e-12) return std::vector<Vec2>{start, goal};

  Aabb2 box = params.workspace;
  const double margin = 0.01;
  box.min_x = std::min(box.min_x, std::min(start.x, goal.x) - margin);
  box.max_x = std::max(box.max_x, std::max(start.x, goal.x) + margin);
  box.min_y = std::min(box.min_y, std::min(start.y, goal.y) - margin);
  box.max_y = std::max(box.max_y, std::max(start.y, goal.y) + margin);

  std::mt19937_64 rng(params.rng_seed);
  std::uniform_real_distribution<double> ux(box.min_x, box.max_x);
  std::uniform_real_distribution<double> uy(box.min_y, box.max_y);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  Tree from_start, from_goal;
  from_start.add(start, -1);
  from_goal.add(goal, -1);
  Tree* a = &from_start;
  Tree* b = &from_goal;

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    const Vec2 q_rand = (u01(rng) < params.goal_bias)
                            ? b->pts.front()
                            : Vec2{ux(rng), uy(rng)};
    auto [status, idx] = extend_tree(*a, q_rand, step, valid);
    if (status != Extend::kTrapped) {
      const Vec2 q_new = a->pts[static_cast<size_t>(idx)];
      auto [cstatus, cidx] = connect_tree(*b, q_new, step, valid);
      if (cstatus == Extend::kReached) {
        std::vector<Vec2> sc = a->chain(idx);
        std::vector<Vec2> gc = b->chain(cidx);
        if (a != &from_start) std::swap(sc, gc);
        // sc runs start..meet, gc runs goal..meet.
        std::vector<Vec2> path = sc;
        path.insert(path.end(), gc.rbegin() + 1, gc.rend());
        path = shortcut(std::move(path), step, valid, rng,
                        params.shortcut_attempts);
        return rediscretize(path, step);
      }
    }
    std::swap(a, b);
  }
  return std::nullopt;
}

namespace {

std::vector<Pose2> lift_path(const std::vector<Vec2>& pts, double theta_start,
                             double theta_goal) {
  std::vector<double> cum{0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    cum.push_back(cum.back() + (pts[i] - pts[i - 1]).norm());
  }
  const double total = cum.back();
  const double dtheta = geometry::wrap_angle(theta_goal - theta_start);
  std::vector<Pose2> out;
  out.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    const double frac = total > 0 ? cum[i] / total : 1.0;
    out.push_back({pts[i].x, pts[i].y,
                   geometry::wrap_angle(theta_start + frac * dtheta)});
  }
  out.back().theta = geometry::wrap_angle(theta_goal);
  return out;
}

}  // namespace

std::optional<std::vector<Pose2>> birrt(const Pose2& start, const Pose2& goal,
                                        std::span<const OrientedBox2> obstacles,
                                        const RrtParams& params) {
  auto valid = [obstacles](const Vec2& p) {
    for (const auto& o : obstacles) {
      if (contains_point(o, p)) return false;
    }
    return true;
  };
  auto pts = birrt_points(start.position(), goal.position(), valid, params);
  if (!pts) return std::nullopt;
  return lift_path(*pts, start.theta, goal.theta);
}

namespace {

// The transport model behind stage 3 of plan_motion. The gripper carries
// objects over the basket rim, so walls never appear as path obstacles;
// they constrain goal configurations only (stage 2). An empty gripper is a
// point; a carried object is validated by its exact footprint at the goal
// heading. Obstacles already in contact with the start configuration are
// dropped: the gripper starts where the previous action ended, typically
// resting on or beside what it just touched.
struct PathChecker {
  std::vector<OrientedBox2> obstacles;
  bool carrying = false;
  double half_x = 0.0, half_y = 0.0;  // carried footprint
  double carry_theta = 0.0;

  bool ok(const Vec2& p) const {
    if (carrying) {
      const OrientedBox2 moving{{p.x, p.y, carry_theta}, half_x, half_y};
      for (const auto& o : obstacles) {
        if (geometry::overlap(moving, o)) return false;
      }
    } else {
      for (const auto& o : obstacles) {
        if (contains_point(o, p)) return false;
      }
    }
    return true;
  }
};

PathChecker make_path_checker(const world::WorldState& s,
                              const actions::GroundAction& a,
                              const Vec2& start, const Pose2& target) {
  PathChecker ck;
  const std::string& obj = a.objects.front();
  if (a.schema == "place") {
    const world::ObjectState* held = s.find_object(obj);
    ck.carrying = true;
    ck.half_x = held->shape.size_x / 2;
    ck.half_y = held->shape.size_y / 2;
    ck.carry_theta = target.theta;
  }
  for (const auto& o : s.objects) {
    if (o.held || o.name == obj) continue;
    ck.obstacles.push_back(o.footprint());
  }
  // Drop whatever the start configuration is already touching.
  std::erase_if(ck.obstacles, [&](const OrientedBox2& o) {
    if (ck.carrying) {
      const OrientedBox2 at_start{{start.x, start.y, ck.carry_theta},
                                  ck.half_x, ck.half_y};
      return geometry::overlap(at_start, o);
    }
    return contains_point(o, start);
  });
  return ck;
}

}  // namespace

std::pair<std::optional<Trajectory>, MotionFeedback> plan_motion(
    const world::WorldState& s, const actions::GroundAction& a,
    const Pose2& ee_start, const RrtParams& params, Metrics& metrics) {
  ++metrics.mp_calls;
  const auto app = actions::applicable(s, a);
  if (!app.ok) {
    throw PreconditionViolated("plan_motion: " + actions::format_action(a) +
                               " not applicable: " + app.reason);
  }
  const Pose2 target = action_target(s, a);
  if (!check_reachable(s, target)) {
    return {std::nullopt, make_unreachable_feedback()};
  }
  if (auto hit = check_goal_collision(s, a)) {
    return {std::nullopt, make_collision_feedback(*hit)};
  }
  const PathChecker ck = make_path_checker(s, a, ee_start.position(), target);
  auto pts = birrt_points(ee_start.position(), target.position(),
                          [&ck](const Vec2& p) { return ck.ok(p); }, params);
  if (!pts) {
    // A free-space search failure has no dedicated template; it is reported
    // as unreachability.
    return {std::nullopt, make_unreachable_feedback()};
  }
  Trajectory tau{lift_path(*pts, ee_start.theta, target.theta), a};
  if (!revalidate_trajectory(s, a, tau, params)) {
    throw Error("plan_motion: trajectory failed post-hoc validation");
  }
  return {std::move(tau), make_feasible_feedback()};
}

bool revalidate_trajectory(const world::WorldState& s,
                           const actions::GroundAction& a,
                           const Trajectory& tau, const RrtParams& params) {
  if (tau.waypoints.empty()) return false;
  const Pose2 target = action_target(s, a);
  const PathChecker ck =
      make_path_checker(s, a, tau.waypoints.front().position(), target);
  const double slack = 1e-9;
  for (size_t i = 0; i < tau.waypoints.size(); ++i) {
    const Vec2 p = tau.waypoints[i].position();
    if (!ck.ok(p)) return false;
    if (i > 0) {
      const Vec2 prev = tau.waypoints[i - 1].position();
      if ((p - prev).norm() > params.step_size + slack) return false;
      if (!ck.ok((p + prev) * 0.5)) return false;
    }
  }
  const Vec2 end = tau.waypoints.back().position();
  return (end - target.position()).norm() < 1e-9;
}

}  // namespace llm3::motion
