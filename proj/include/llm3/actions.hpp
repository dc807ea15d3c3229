#pragma once

#include <map>
#include <string>
#include <vector>

#include "llm3/errors.hpp"

namespace llm3::world {
struct WorldState;
}

namespace llm3::actions {

/// Closed interval for one continuous parameter.
struct ParamSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// A primitive action schema: name, object arity, and ordered continuous
/// parameters with their legal ranges. The ranges are part of the prompt
/// contract, so theta is literally [-3.14, 3.14] rather than +/-pi.
struct ActionSchema {
  std::string name;
  int object_arity = 0;
  std::vector<ParamSpec> params;

  const ParamSpec* find_param(const std::string& pname) const;
};

/// The two schemas the framework ships: pick and place.
const std::vector<ActionSchema>& builtin_schemas();
const ActionSchema* find_schema(const std::string& name);

/// A schema instantiated with object arguments and parameter values.
/// Instances produced by parse_action always satisfy the schema contract
/// (arity, parameter set, ranges); the parser is the validation gate.
struct GroundAction {
  std::string schema;
  std::vector<std::string> objects;
  std::map<std::string, double> params;

  bool operator==(const GroundAction& o) const = default;
};

/// Parse the surface syntax used between the planner and the LLM, e.g.
///   pick(['red_box'], {})
///   place(['red_box'], {'x': 0.51, 'y': 0.02, 'theta': 0.00})
/// Tolerant of whitespace and single/double quotes. Throws ParseError on
/// syntax errors, SchemaError for unknown action names, ValidationError for
/// arity or parameter violations. Messages are phrased so the planner can
/// relay them to the LLM verbatim.
GroundAction parse_action(const std::string& text);

/// Canonical rendering: single quotes, parameters in schema order, two
/// decimals. parse_action(format_action(a)) == a whenever a's parameters
/// are representable at two decimals.
std::string format_action(const GroundAction& a);

struct Applicability {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Symbolic preconditions: pick requires an empty gripper and an existing,
/// unheld object; place requires that the named object is the one held.
/// A missing object name makes the action inapplicable (reason says so).
Applicability applicable(const world::WorldState& s, const GroundAction& a);

/// Fixed-precision helper shared by formatting and textualization.
/// Renders with two decimals; negative zero collapses to "0.00".
std::string fmt2(double v);

}  // namespace llm3::actions
