#pragma once

#include "irp/geometry.hpp"
#include "irp/types.hpp"

#include <string>
#include <vector>

namespace irp {

// Reference bounding box for one leaf type; a detected box matches when every
// axis is within `tolerance` of `dims`.
struct TypePrototype {
  TypeTag type;
  Vec3 dims;
  Vec3 tolerance{0.015, 0.015, 0.015};

  bool operator==(const TypePrototype &) const = default;
};

struct StackRule {
  TypeTag object;
  TypeTag element;

  bool operator==(const StackRule &) const = default;
};

// stackable(o, e) holds when some rule (A, B) has type(o) <= A and
// type(e) <= B in the hierarchy.
struct StackabilityRules {
  std::vector<StackRule> allowed;

  // OBJECT on POSITION, CUBE on BASE, CUBE on CUBE, ROOF on CUBE.
  static StackabilityRules defaults();

  bool allows(const TypeHierarchy &h, const TypeTag &object, const TypeTag &element) const;
  bool operator==(const StackabilityRules &) const = default;
};

struct Workspace {
  Vec3 min{0.0, -0.8, -0.05};
  Vec3 max{1.2, 0.8, 1.0};

  bool contains(const Vec3 &p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
  bool operator==(const Workspace &) const = default;
};

struct WorkbenchConfig {
  // Max horizontal distance for on(o, p) and for object-on-object centring.
  double perception_threshold = 0.05;
  // Vertical slack when deciding that one object rests on another.
  double stack_tolerance = 0.01;
  // Keyframes farther than this from every landmark are stored in the base frame.
  double frame_radius = 0.2;
  double grasp_radius = 0.04;
  Workspace workspace;
  std::vector<TypePrototype> prototypes;
  StackabilityRules stackable;

  static WorkbenchConfig defaults();
  // JSON document; missing keys keep their defaults. See README for the schema.
  static WorkbenchConfig load(const std::string &path);
  static WorkbenchConfig parse(const std::string &text);
  // IRP_CONFIG if set, defaults otherwise.
  static WorkbenchConfig from_environment();

  bool operator==(const WorkbenchConfig &) const = default;
};

std::vector<TypePrototype> default_prototypes();

} // namespace irp
