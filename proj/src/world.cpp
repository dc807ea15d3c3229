#include "llm3/world.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "llm3/motion.hpp"

namespace llm3::world {

using actions::fmt2;

const ObjectState* WorldState::find_object(const std::string& name) const {
  auto it = std::lower_bound(
      objects.begin(), objects.end(), name,
      [](const ObjectState& o, const std::string& n) { return o.name < n; });
  return (it != objects.end() && it->name == name) ? &*it : nullptr;
}

ObjectState* WorldState::find_object(const std::string& name) {
  return const_cast<ObjectState*>(
      static_cast<const WorldState*>(this)->find_object(name));
}

void WorldState::add_object(ObjectState obj) {
  auto it = std::lower_bound(objects.begin(), objects.end(), obj.name,
                             [](const ObjectState& o, const std::string& n) {
                               return o.name < n;
                             });
  if (it != objects.end() && it->name == obj.name) {
    throw ValidationError("duplicate object name '" + obj.name + "'");
  }
  objects.insert(it, std::move(obj));
}

std::optional<std::string> WorldState::invariant_violation() const {
  int held_count = 0;
  for (const auto& o : objects) {
    if (!o.shape.is_valid()) return "object '" + o.name + "' has invalid shape";
    if (!o.pose.is_finite()) return "object '" + o.name + "' has non-finite pose";
    if (o.held) {
      ++held_count;
      if (!holding || *holding != o.name) {
        return "object '" + o.name + "' is held but holding=" + holding.value_or("none");
      }
    }
  }
  if (held_count > 1) return "more than one held object";
  if (holding) {
    const ObjectState* h = find_object(*holding);
    if (!h) return "holding references unknown object '" + *holding + "'";
    if (!h->held) return "holding set but object not marked held";
  }
  for (size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].held) continue;
    for (size_t j = i + 1; j < objects.size(); ++j) {
      if (objects[j].held) continue;
      if (geometry::overlap(objects[i].footprint(), objects[j].footprint())) {
        return "objects '" + objects[i].name + "' and '" + objects[j].name +
               "' overlap";
      }
    }
  }
  if (!basket.is_valid()) return "invalid basket region";
  return std::nullopt;
}

std::vector<std::pair<std::string, OrientedBox2>> basket_walls(
    const WorldState& s) {
  const double hx = s.basket.half_x;
  const double hy = s.basket.half_y;
  const double w = s.wall_thickness;
  const Pose2 c = s.basket.center;
  auto wall = [&](double lx, double ly, double whx, double why) {
    OrientedBox2 b{{0, 0, c.theta}, whx, why};
    const geometry::Vec2 p = geometry::to_world(s.basket, {lx, ly});
    b.center.x = p.x;
    b.center.y = p.y;
    return b;
  };
  // N/S span the full outer width so the four walls close a frame.
  return {
      {"basket_wall_N", wall(0.0, hy + w / 2, hx + w, w / 2)},
      {"basket_wall_S", wall(0.0, -hy - w / 2, hx + w, w / 2)},
      {"basket_wall_E", wall(hx + w / 2, 0.0, w / 2, hy)},
      {"basket_wall_W", wall(-hx - w / 2, 0.0, w / 2, hy)},
  };
}

WorldState transition(const WorldState& s, const actions::GroundAction& a,
                      const motion::Trajectory& tau) {
  if (tau.waypoints.empty()) {
    throw PreconditionViolated("transition: empty trajectory for " +
                               actions::format_action(a));
  }
  const auto app = actions::applicable(s, a);
  if (!app.ok) {
    throw PreconditionViolated("transition: " + actions::format_action(a) +
                               " not applicable: " + app.reason);
  }
  WorldState next = s;
  const std::string& obj = a.objects.front();
  ObjectState* o = next.find_object(obj);
  if (a.schema == "pick") {
    next.holding = obj;
    o->held = true;
  } else if (a.schema == "place") {
    o->pose = Pose2{a.params.at("x"), a.params.at("y"), a.params.at("theta")}
                  .normalized();
    o->held = false;
    next.holding.reset();
  } else {
    throw PreconditionViolated("transition: unknown schema '" + a.schema + "'");
  }
  return next;
}

std::pair<bool, TaskFeedback> goal_satisfied(const WorldState& s,
                                             const GoalSpec& goal) {
  std::set<std::string> offending;
  std::vector<const ObjectState*> targets;
  for (const auto& name : goal.target_objects) {
    const ObjectState* o = s.find_object(name);
    if (!o) throw UnknownObject("goal references unknown object '" + name + "'");
    targets.push_back(o);
  }
  for (const ObjectState* o : targets) {
    if (o->held || !geometry::contains(s.basket, o->footprint())) {
      offending.insert(o->name);
    }
  }
  for (size_t i = 0; i < targets.size(); ++i) {
    for (size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i]->held || targets[j]->held) continue;
      if (geometry::overlap(targets[i]->footprint(), targets[j]->footprint())) {
        offending.insert(targets[i]->name);
        offending.insert(targets[j]->name);
      }
    }
  }
  if (offending.empty()) {
    return {true, {true, "Goal satisfied."}};
  }
  std::ostringstream os;
  os << "Goal not satisfied: ";
  bool first = true;
  for (const auto& name : offending) {
    if (!first) os << ", ";
    first = false;
    os << name;
  }
  os << " not fully inside the basket.";
  return {false, {false, os.str()}};
}

std::string textualize_state(const WorldState& s) {
  std::ostringstream os;
  os << "Robot base: (" << fmt2(s.robot_base.x) << ", " << fmt2(s.robot_base.y)
     << "), reach range [" << fmt2(s.reach_min) << ", " << fmt2(s.reach_max)
     << "]\n";
  os << "Basket region: center (" << fmt2(s.basket.center.x) << ", "
     << fmt2(s.basket.center.y) << "), rotation " << fmt2(s.basket.center.theta)
     << ", inner size (" << fmt2(2 * s.basket.half_x) << ", "
     << fmt2(2 * s.basket.half_y) << ")\n";
  os << "Objects:\n";
  for (const auto& o : s.objects) {  // already name-sorted
    os << "- " << o.name << ": size (" << fmt2(o.shape.size_x) << ", "
       << fmt2(o.shape.size_y) << ", " << fmt2(o.shape.size_z) << "), ";
    if (o.held) {
      os << "held by the gripper\n";
    } else {
      os << "pose (" << fmt2(o.pose.x) << ", " << fmt2(o.pose.y) << ", "
         << fmt2(o.pose.theta) << ")\n";
    }
  }
  return os.str();
}

}  // namespace llm3::world
