#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "llm3/actions.hpp"
#include "llm3/geometry.hpp"
#include "llm3/world.hpp"

namespace llm3::motion {

using geometry::Aabb2;
using geometry::OrientedBox2;
using geometry::Pose2;
using geometry::Vec2;

/// End-effector path realizing one ground action. Consecutive waypoints are
/// at most step_size apart; theta interpolates linearly from the start
/// heading to the goal heading along the path.
struct Trajectory {
  std::vector<Pose2> waypoints;
  actions::GroundAction action;
};

struct MotionFeedback {
  enum class Kind { kCollisionWithObject, kUnreachable, kFeasible };
  Kind kind = Kind::kUnreachable;
  std::string object;  // set for kCollisionWithObject
  std::string text;    // rendered template
};

/// The exact feedback templates fed back to the LLM. These strings are the
/// wire contract; tests assert them byte for byte.
std::string render_feedback(const MotionFeedback& f);
MotionFeedback make_collision_feedback(const std::string& object);
MotionFeedback make_unreachable_feedback();
MotionFeedback make_feasible_feedback();

struct RrtParams {
  double step_size = 0.05;
  double goal_bias = 0.1;
  int max_iterations = 50000;
  std::uint64_t rng_seed = 0;
  /// Sampling region; grown to cover start and goal if needed.
  Aabb2 workspace{0.0, 1.0, -1.0, 1.0};
  int shortcut_attempts = 100;

  bool is_valid() const {
    return step_size > 0.0 && goal_bias > 0.0 && goal_bias < 1.0 &&
           max_iterations > 0;
  }
};

/// Per-trial motion accounting. Owned by the planning loop and passed in;
/// plan_motion bumps mp_calls exactly once per invocation.
struct Metrics {
  int llm_calls = 0;
  int mp_calls = 0;
  int iterations = 0;
};

/// Annulus reachability, the IK stand-in: a target is reachable iff its
/// distance from the robot base lies in [reach_min, reach_max].
bool check_reachable(const world::WorldState& s, const Pose2& target);

/// Goal-configuration collision check. For place: the held object's
/// footprint at the target pose against every non-held object and the four
/// basket walls. For pick: a small gripper square at the object's pose
/// against all other objects. Returns the first colliding entity name in
/// deterministic order (objects sorted by name, then walls N, S, E, W).
std::optional<std::string> check_goal_collision(const world::WorldState& s,
                                                const actions::GroundAction& a);

/// Bidirectional RRT (RRT-Connect) for a point robot among oriented-box
/// obstacles. Uniform sampling over the workspace box with a goal-bias pull
/// toward the opposite tree; returned paths are validated at waypoints and
/// segment midpoints, shortcut-smoothed, and re-discretized to step_size.
/// Deterministic given rng_seed. Returns nullopt when max_iterations is
/// exhausted (free-space failure).
std::optional<std::vector<Pose2>> birrt(const Pose2& start, const Pose2& goal,
                                        std::span<const OrientedBox2> obstacles,
                                        const RrtParams& params);

/// Same planner against an arbitrary point-validity predicate (used for
/// carried-object transport where the moving footprint is a box).
std::optional<std::vector<Vec2>> birrt_points(
    const Vec2& start, const Vec2& goal,
    const std::function<bool(const Vec2&)>& valid, const RrtParams& params);

/// The motion planner MP. Pipeline: reachability, then goal collision, then
/// path search from the current end-effector pose. Carried objects are
/// validated by their exact footprint at the goal heading; basket walls
/// constrain goal configurations but not transit (the gripper clears the
/// rim when travelling). Throws PreconditionViolated for inapplicable
/// actions. Increments metrics.mp_calls exactly once per call.
std::pair<std::optional<Trajectory>, MotionFeedback> plan_motion(
    const world::WorldState& s, const actions::GroundAction& a,
    const Pose2& ee_start, const RrtParams& params, Metrics& metrics);

/// Re-validate a returned trajectory with the same checker used during the
/// search: every waypoint and segment midpoint collision-free, spacing
/// within step_size.
bool revalidate_trajectory(const world::WorldState& s,
                           const actions::GroundAction& a,
                           const Trajectory& tau, const RrtParams& params);

/// Gripper footprint side length used by the pick collision check.
inline constexpr double kGripperWidth = 0.04;

}  // namespace llm3::motion
