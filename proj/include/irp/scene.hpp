#pragma once

#include "irp/config.hpp"
#include "irp/geometry.hpp"
#include "irp/world_state.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace irp {

enum class Arm { LeftClaw, RightSuction };

const char *to_string(Arm arm);
Arm arm_from_string(const std::string &name);

// An object is located by the centre of its bounding-box base.
struct ObjectInstance {
  std::string id;
  Vec3 pose;
  Vec3 dims; // width (x), length (y), height (z)
  TypeTag type;

  Vec3 center() const { return {pose.x, pose.y, pose.z + dims.z / 2}; }
  Vec3 top() const { return {pose.x, pose.y, pose.z + dims.z}; }
  bool operator==(const ObjectInstance &) const = default;
};

// Marked table position; lies on the table plane (z = 0).
struct PositionInstance {
  std::string id;
  double x = 0.0;
  double y = 0.0;

  Vec3 point() const { return {x, y, 0.0}; }
  bool operator==(const PositionInstance &) const = default;
};

struct Scene {
  std::vector<ObjectInstance> objects;
  std::vector<PositionInstance> positions;
  // Arm -> id of the object in its gripper. Absent arms hold nothing.
  std::map<Arm, std::string> held;

  const ObjectInstance *find_object(const std::string &id) const;
  ObjectInstance *find_object(const std::string &id);
  const PositionInstance *find_position(const std::string &id) const;
  bool is_held(const std::string &id) const;
  InstanceTypes instance_types() const;

  std::vector<std::string> violations(const TypeHierarchy &types,
                                      const WorkbenchConfig &config) const;
  // Throws InvalidScene listing every violation.
  void validate(const TypeHierarchy &types, const WorkbenchConfig &config) const;

  bool operator==(const Scene &) const = default;
};

// Unique leaf type whose prototype box matches `dims` on every axis.
TypeTag classify_type(const Vec3 &dims, const std::vector<TypePrototype> &prototypes);

enum class PerceptionMode {
  Full,
  // Objects with something on top of them are not reported at all.
  StackBlind,
};

const char *to_string(PerceptionMode mode);

// The element (object or position) that `object` currently rests on, if any.
std::optional<std::string> support_of(const Scene &scene, const ObjectInstance &object,
                                      const WorkbenchConfig &config);

// Type-derived atoms: flat, thin and stackable, restricted to atoms that
// mention at least one id in `only` (all ids when `only` is empty).
std::set<Atom> static_atoms(const Scene &scene, const Vocabulary &vocab,
                            const WorkbenchConfig &config,
                            const std::set<std::string> &only = {});

WorldState perceive(const Scene &scene, const WorkbenchConfig &config, const Vocabulary &vocab,
                    PerceptionMode mode = PerceptionMode::Full);

// User edits applied on top of perception.
struct StateCorrections {
  std::map<std::string, TypeTag> types;
  std::set<Atom> add;
  std::set<Atom> remove;

  bool empty() const { return types.empty() && add.empty() && remove.empty(); }
  bool operator==(const StateCorrections &) const = default;
};

Scene with_type_overrides(const Scene &scene, const std::map<std::string, TypeTag> &types);

// perceive() on the type-corrected scene, then the atom edits. Instances that
// perception missed but the scene contains are revealed (with their static
// atoms) when an added atom mentions them. clear/on coupling is re-derived;
// an explicit edit that contradicts it is an InconsistentCorrection.
WorldState perceive_corrected(const Scene &scene, const WorkbenchConfig &config,
                              const Vocabulary &vocab, PerceptionMode mode,
                              const StateCorrections &corrections);

} // namespace irp
