#pragma once

// JSON mappings shared by persistence, execution logs and the REST layer.

#include "irp/demonstration.hpp"
#include "irp/inference.hpp"
#include "irp/planner.hpp"
#include "irp/scene.hpp"

#include <json.hpp>

namespace irp {

using nlohmann::json;

// "on(obj1, A)". Spaces are optional.
Atom parse_atom(const std::string &text);
// "on(obj1, A)", "¬on(obj1, A)", "not on(obj1, A)" or "!on(obj1, A)".
Literal parse_literal(const std::string &text);

void to_json(json &j, const Vec3 &v);
void from_json(const json &j, Vec3 &v);
void to_json(json &j, const Quat &q);
void from_json(const json &j, Quat &q);
void to_json(json &j, const Pose &p);
void from_json(const json &j, Pose &p);

void to_json(json &j, const TypeTag &t);
void from_json(const json &j, TypeTag &t);
void to_json(json &j, const TypeHierarchy &h);
void from_json(const json &j, TypeHierarchy &h);

// Atoms accept either {"predicate", "args"} or the "on(a, b)" text form.
void to_json(json &j, const Atom &a);
void from_json(const json &j, Atom &a);
void to_json(json &j, const Literal &l);
void from_json(const json &j, Literal &l);

void to_json(json &j, const PredicateSchema &s);
void from_json(const json &j, PredicateSchema &s);
void to_json(json &j, const Vocabulary &v);
void from_json(const json &j, Vocabulary &v);
void to_json(json &j, const WorldState &w);
void from_json(const json &j, WorldState &w);

void to_json(json &j, const Arm &a);
void from_json(const json &j, Arm &a);
void to_json(json &j, const Gripper &g);
void from_json(const json &j, Gripper &g);
void to_json(json &j, const PerceptionMode &m);
void from_json(const json &j, PerceptionMode &m);

void to_json(json &j, const ObjectInstance &o);
void from_json(const json &j, ObjectInstance &o);
void to_json(json &j, const PositionInstance &p);
void from_json(const json &j, PositionInstance &p);
void to_json(json &j, const Scene &s);
void from_json(const json &j, Scene &s);
void to_json(json &j, const StateCorrections &c);
void from_json(const json &j, StateCorrections &c);

void to_json(json &j, const LandmarkDescriptor &d);
void from_json(const json &j, LandmarkDescriptor &d);
void to_json(json &j, const FrameRef &f);
void from_json(const json &j, FrameRef &f);
void to_json(json &j, const Keyframe &k);
void from_json(const json &j, Keyframe &k);
void to_json(json &j, const LowLevelAction &a);
void from_json(const json &j, LowLevelAction &a);

void to_json(json &j, const Parameter &p);
void from_json(const json &j, Parameter &p);
void to_json(json &j, const HighLevelAction &a);
void from_json(const json &j, HighLevelAction &a);

// Name and arguments only; indices are task-specific.
void to_json(json &j, const GroundAction &a);
void from_json(const json &j, GroundAction &a);
void to_json(json &j, const Plan &p);
void from_json(const json &j, Plan &p);

void to_json(json &j, const ScriptedKeyframe &k);
void from_json(const json &j, ScriptedKeyframe &k);
void to_json(json &j, const DemoScript &s);
void from_json(const json &j, DemoScript &s);

} // namespace irp
