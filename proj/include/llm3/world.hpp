#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "llm3/actions.hpp"
#include "llm3/errors.hpp"
#include "llm3/geometry.hpp"

namespace llm3::motion {
struct Trajectory;
}

namespace llm3::world {

using geometry::BoxShape;
using geometry::OrientedBox2;
using geometry::Pose2;

struct ObjectState {
  std::string name;
  BoxShape shape;
  Pose2 pose;
  bool held = false;

  OrientedBox2 footprint() const { return geometry::footprint(shape, pose); }
};

/// Full environment snapshot. Value-semantic: transitions return fresh
/// states and never mutate their input. Objects are kept sorted by name so
/// every traversal (collision queries, textualization) is deterministic.
struct WorldState {
  Pose2 robot_base{0.0, 0.0, 0.0};
  std::optional<std::string> holding;
  std::vector<ObjectState> objects;
  OrientedBox2 basket;  // interior region; walls sit outside it
  double wall_thickness = 0.02;
  double reach_min = 0.10;
  double reach_max = 0.90;

  const ObjectState* find_object(const std::string& name) const;
  ObjectState* find_object(const std::string& name);

  /// Insert keeping name order. Throws ValidationError on duplicates.
  void add_object(ObjectState obj);

  /// Checks the structural invariants: at most one held object matching
  /// `holding`, no pairwise overlap among non-held objects, valid shapes.
  /// Returns an explanation for the first violation found.
  std::optional<std::string> invariant_violation() const;
};

/// The four basket wall rectangles, named in fixed order N, S, E, W
/// (+y, -y, +x, -x in the basket frame). N/S span the full outer width.
std::vector<std::pair<std::string, OrientedBox2>> basket_walls(
    const WorldState& s);

struct GoalSpec {
  std::vector<std::string> target_objects;
};

struct TaskFeedback {
  bool satisfied = false;
  std::string text;
};

/// Apply a motion-verified action. pick: the object becomes held and leaves
/// the table plane; place: the object is set down at the action's (x, y,
/// theta). Throws PreconditionViolated when the action is inapplicable or
/// tau is empty; that signals a planner bug, not an LLM failure.
WorldState transition(const WorldState& s, const actions::GroundAction& a,
                      const motion::Trajectory& tau);

/// True iff every target object is un-held, fully inside the basket, and no
/// two targets overlap. The feedback text names the offending objects.
/// Throws UnknownObject if the goal references a missing name.
std::pair<bool, TaskFeedback> goal_satisfied(const WorldState& s,
                                             const GoalSpec& goal);

/// Deterministic, line-per-object rendering used in prompts: robot base and
/// reach, basket region, then one line per object (sorted by name), all
/// numbers at two decimals.
std::string textualize_state(const WorldState& s);

}  // namespace llm3::world
