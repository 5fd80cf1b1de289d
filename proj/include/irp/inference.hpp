#pragma once

#include "irp/demonstration.hpp"
#include "irp/world_state.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace irp {

// Conditions of one observed transition, still over instance ids.
struct GroundConditions {
  std::set<Literal> pre;
  std::set<Atom> eff_plus;
  std::set<Atom> eff_minus;

  bool operator==(const GroundConditions &) const = default;
};

// eff- = O1 \ O2, eff+ = O2 \ O1, pre = eff- (positive) ∪ ¬eff+.
GroundConditions infer_ground_conditions(const WorldState &o1, const WorldState &o2);

struct Parameter {
  std::string name; // "?obj", "?A", ...
  TypeTag type;
  // Demo instance the variable was lifted from; used to bind the low-level
  // action's landmarks at execution time. Empty for hand-written actions.
  std::string origin;
  // The low-level motion is anchored on this parameter's landmark.
  bool landmark = false;

  bool operator==(const Parameter &) const = default;
};

struct HighLevelAction {
  std::string name;
  std::vector<Parameter> params;
  std::set<Literal> pre;
  std::set<Atom> eff_plus;
  std::set<Atom> eff_minus;
  // Name of the linked LowLevelAction; empty when there is none (e.g. parsed
  // from PDDL).
  std::string low_level;

  const Parameter *param(const std::string &name) const;
  std::map<std::string, TypeTag> variable_types() const;
  std::set<std::string> used_variables() const;

  bool operator==(const HighLevelAction &) const = default;
};

// Throws on: duplicate parameter names, unknown types, ill-typed literals,
// eff+ ∩ eff- ≠ ∅, variables that are not parameters, and (when
// `require_param_coverage`) parameters that no literal uses.
void validate_action(const Vocabulary &vocab, const HighLevelAction &action,
                     bool require_param_coverage = true);

HighLevelAction lift_action(const std::string &name, const GroundConditions &ground,
                            const InstanceTypes &instances,
                            const LowLevelAction *low_level = nullptr);

// Substitutes variables -> ids in every literal.
GroundConditions ground_conditions(const HighLevelAction &action,
                                   const std::map<std::string, std::string> &substitution);
// Variable -> origin for every parameter with a recorded origin.
std::map<std::string, std::string> origin_substitution(const HighLevelAction &action);
// Positional arguments -> variable substitution.
std::map<std::string, std::string> bind_arguments(const HighLevelAction &action,
                                                  const std::vector<std::string> &args);

namespace edits {
struct SetParamType {
  std::string param;
  TypeTag type;
};
struct AddPre {
  Literal literal;
};
struct RemovePre {
  Literal literal;
};
struct AddEffPlus {
  Atom atom;
};
struct AddEffMinus {
  Atom atom;
};
// Removes the atom from eff+ or eff-.
struct RemoveEff {
  Atom atom;
};
struct Rename {
  std::string name;
};
} // namespace edits

using ActionEdit = std::variant<edits::SetParamType, edits::AddPre, edits::RemovePre,
                                edits::AddEffPlus, edits::AddEffMinus, edits::RemoveEff,
                                edits::Rename>;

// Returns the edited copy. Removing the last literal that mentions a
// parameter drops the parameter, unless the motion is anchored on it.
HighLevelAction edit_action(const Vocabulary &vocab, const HighLevelAction &action,
                            const ActionEdit &edit);

HighLevelAction copy_action(const HighLevelAction &action, const std::string &new_name,
                            const std::set<std::string> &existing_names);

// English checklist, preconditions then effects.
struct ConditionRow {
  std::string section; // "pre", "eff+", "eff-"
  Literal literal;
  std::string english;
};
std::vector<ConditionRow> describe(const HighLevelAction &action);

} // namespace irp
