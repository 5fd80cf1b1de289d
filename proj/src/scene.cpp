#include "irp/scene.hpp"

#include "irp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace irp {

const char *to_string(Arm arm) {
  switch (arm) {
  case Arm::LeftClaw:
    return "left_claw";
  case Arm::RightSuction:
    return "right_suction";
  }
  return "?";
}

Arm arm_from_string(const std::string &name) {
  if (name == "left_claw")
    return Arm::LeftClaw;
  if (name == "right_suction")
    return Arm::RightSuction;
  throw Error(ErrorCode::InvalidArgument, "unknown arm '" + name + "'");
}

const char *to_string(PerceptionMode mode) {
  return mode == PerceptionMode::Full ? "full" : "stack_blind";
}

const ObjectInstance *Scene::find_object(const std::string &id) const {
  for (const auto &o : objects)
    if (o.id == id)
      return &o;
  return nullptr;
}

ObjectInstance *Scene::find_object(const std::string &id) {
  for (auto &o : objects)
    if (o.id == id)
      return &o;
  return nullptr;
}

const PositionInstance *Scene::find_position(const std::string &id) const {
  for (const auto &p : positions)
    if (p.id == id)
      return &p;
  return nullptr;
}

bool Scene::is_held(const std::string &id) const {
  for (const auto &[arm, held_id] : held)
    if (held_id == id)
      return true;
  return false;
}

InstanceTypes Scene::instance_types() const {
  InstanceTypes out;
  for (const auto &p : positions)
    out.emplace(p.id, types::position);
  for (const auto &o : objects)
    out.emplace(o.id, o.type);
  return out;
}

namespace {

constexpr double kOverlapSlack = 1e-6;

bool boxes_overlap(const ObjectInstance &a, const ObjectInstance &b) {
  auto axis = [](double ca, double ha, double cb, double hb) {
    return std::abs(ca - cb) < ha + hb - kOverlapSlack;
  };
  return axis(a.pose.x, a.dims.x / 2, b.pose.x, b.dims.x / 2) &&
         axis(a.pose.y, a.dims.y / 2, b.pose.y, b.dims.y / 2) &&
         axis(a.center().z, a.dims.z / 2, b.center().z, b.dims.z / 2);
}

bool within_footprint(const ObjectInstance &support, const Vec3 &p) {
  return std::abs(p.x - support.pose.x) <= support.dims.x / 2 + kOverlapSlack &&
         std::abs(p.y - support.pose.y) <= support.dims.y / 2 + kOverlapSlack;
}

} // namespace

std::vector<std::string> Scene::violations(const TypeHierarchy &types,
                                           const WorkbenchConfig &config) const {
  std::vector<std::string> out;
  std::set<std::string> ids;
  for (const auto &p : positions)
    if (!ids.insert(p.id).second)
      out.push_back("duplicate id '" + p.id + "'");
  for (const auto &o : objects) {
    if (!ids.insert(o.id).second)
      out.push_back("duplicate id '" + o.id + "'");
    if (!(o.dims.x > 0 && o.dims.y > 0 && o.dims.z > 0))
      out.push_back("object '" + o.id + "' has non-positive dimensions");
    if (!types.contains(o.type) || !types.is_subtype(o.type, types::object))
      out.push_back("object '" + o.id + "' has non-object type '" + o.type.name + "'");
  }
  std::set<std::string> held_ids;
  for (const auto &[arm, id] : held) {
    if (!find_object(id))
      out.push_back(std::string(to_string(arm)) + " holds unknown object '" + id + "'");
    if (!held_ids.insert(id).second)
      out.push_back("object '" + id + "' is held by two arms");
  }
  for (const auto &o : objects) {
    if (held_ids.count(o.id))
      continue;
    bool supported = std::abs(o.pose.z) <= config.stack_tolerance;
    for (const auto &u : objects) {
      if (supported)
        break;
      if (u.id != o.id && std::abs(o.pose.z - u.top().z) <= config.stack_tolerance &&
          within_footprint(u, o.pose))
        supported = true;
    }
    if (!supported)
      out.push_back("object '" + o.id + "' is neither held nor supported");
  }
  for (size_t i = 0; i < objects.size(); ++i)
    for (size_t j = i + 1; j < objects.size(); ++j) {
      const auto &a = objects[i];
      const auto &b = objects[j];
      if (held_ids.count(a.id) || held_ids.count(b.id))
        continue;
      if (boxes_overlap(a, b))
        out.push_back("objects '" + a.id + "' and '" + b.id + "' overlap");
    }
  return out;
}

void Scene::validate(const TypeHierarchy &types, const WorkbenchConfig &config) const {
  auto v = violations(types, config);
  if (v.empty())
    return;
  std::string msg;
  for (const auto &s : v)
    msg += (msg.empty() ? "" : "; ") + s;
  throw Error(ErrorCode::InvalidScene, msg);
}

TypeTag classify_type(const Vec3 &dims, const std::vector<TypePrototype> &prototypes) {
  std::vector<TypeTag> matches;
  for (const auto &p : prototypes) {
    if (std::abs(dims.x - p.dims.x) <= p.tolerance.x + 1e-12 &&
        std::abs(dims.y - p.dims.y) <= p.tolerance.y + 1e-12 &&
        std::abs(dims.z - p.dims.z) <= p.tolerance.z + 1e-12)
      matches.push_back(p.type);
  }
  std::ostringstream d;
  d << "(" << dims.x << ", " << dims.y << ", " << dims.z << ")";
  if (matches.empty())
    throw Error(ErrorCode::UnknownType, "no prototype matches dims " + d.str());
  if (matches.size() > 1)
    throw Error(ErrorCode::AmbiguousType, std::to_string(matches.size()) +
                                              " prototypes match dims " + d.str());
  return matches.front();
}

std::optional<std::string> support_of(const Scene &scene, const ObjectInstance &object,
                                      const WorkbenchConfig &config) {
  if (scene.is_held(object.id))
    return std::nullopt;
  const double d = config.perception_threshold;
  const ObjectInstance *best = nullptr;
  double best_offset = 0.0;
  for (const auto &u : scene.objects) {
    if (u.id == object.id || scene.is_held(u.id))
      continue;
    if (std::abs(object.pose.z - u.top().z) > config.stack_tolerance)
      continue;
    const double offset = object.pose.horizontal_distance(u.pose);
    if (offset > d)
      continue;
    if (!best || offset < best_offset || (offset == best_offset && u.id < best->id)) {
      best = &u;
      best_offset = offset;
    }
  }
  if (best)
    return best->id;
  if (std::abs(object.pose.z) > config.stack_tolerance)
    return std::nullopt;
  const PositionInstance *nearest = nullptr;
  double nearest_dist = 0.0;
  for (const auto &p : scene.positions) {
    const double dist = object.pose.horizontal_distance(p.point());
    if (!nearest || dist < nearest_dist || (dist == nearest_dist && p.id < nearest->id)) {
      nearest = &p;
      nearest_dist = dist;
    }
  }
  if (nearest && nearest_dist <= d)
    return nearest->id;
  return std::nullopt;
}

std::set<Atom> static_atoms(const Scene &scene, const Vocabulary &vocab,
                            const WorkbenchConfig &config, const std::set<std::string> &only) {
  const auto &h = vocab.types;
  auto wanted = [&](const std::string &a, const std::string &b = {}) {
    return only.empty() || only.count(a) || (!b.empty() && only.count(b));
  };
  auto below = [&](const TypeTag &t, const TypeTag &anc) {
    return h.contains(anc) && h.is_subtype(t, anc);
  };
  std::set<Atom> out;
  for (const auto &o : scene.objects) {
    if (below(o.type, types::base) || below(o.type, types::cube))
      if (wanted(o.id))
        out.insert({predicates::flat, {o.id}});
    if (below(o.type, types::cube) || below(o.type, types::roof))
      if (wanted(o.id))
        out.insert({predicates::thin, {o.id}});
    for (const auto &p : scene.positions)
      if (wanted(o.id, p.id) && config.stackable.allows(h, o.type, types::position))
        out.insert({predicates::stackable, {o.id, p.id}});
    for (const auto &e : scene.objects)
      if (e.id != o.id && wanted(o.id, e.id) && config.stackable.allows(h, o.type, e.type))
        out.insert({predicates::stackable, {o.id, e.id}});
  }
  return out;
}

namespace {

WorldState perceive_full(const Scene &scene, const WorkbenchConfig &config,
                         const Vocabulary &vocab) {
  WorldState state;
  state.instances = scene.instance_types();
  std::set<std::string> covered;
  for (const auto &o : scene.objects) {
    if (auto s = support_of(scene, o, config)) {
      state.atoms.insert({predicates::on, {o.id, *s}});
      covered.insert(*s);
    }
  }
  for (const auto &p : scene.positions)
    if (!covered.count(p.id))
      state.atoms.insert({predicates::clear, {p.id}});
  for (const auto &o : scene.objects)
    if (!scene.is_held(o.id) && !covered.count(o.id))
      state.atoms.insert({predicates::clear, {o.id}});
  auto stat = static_atoms(scene, vocab, config);
  state.atoms.insert(stat.begin(), stat.end());
  return state;
}

} // namespace

WorldState perceive(const Scene &scene, const WorkbenchConfig &config, const Vocabulary &vocab,
                    PerceptionMode mode) {
  WorldState full = perceive_full(scene, config, vocab);
  if (mode == PerceptionMode::Full)
    return full;
  std::set<std::string> hidden;
  for (const auto &a : full.atoms)
    if (a.predicate == predicates::on && scene.find_object(a.args[1]))
      hidden.insert(a.args[1]);
  if (hidden.empty())
    return full;
  Scene visible = scene;
  std::erase_if(visible.objects, [&](const ObjectInstance &o) { return hidden.count(o.id); });
  std::erase_if(visible.held, [&](const auto &kv) { return hidden.count(kv.second); });
  return perceive_full(visible, config, vocab);
}

Scene with_type_overrides(const Scene &scene, const std::map<std::string, TypeTag> &types) {
  Scene out = scene;
  for (const auto &[id, type] : types) {
    auto *o = out.find_object(id);
    if (!o)
      throw Error(ErrorCode::UnknownInstance, "type correction for unknown object '" + id + "'");
    o->type = type;
  }
  return out;
}

WorldState perceive_corrected(const Scene &scene, const WorkbenchConfig &config,
                              const Vocabulary &vocab, PerceptionMode mode,
                              const StateCorrections &corrections) {
  const Scene typed = with_type_overrides(scene, corrections.types);
  typed.validate(vocab.types, config);
  WorldState state = perceive(typed, config, vocab, mode);

  std::set<std::string> revealed;
  for (const auto &a : corrections.add)
    for (const auto &arg : a.args)
      if (!state.instances.count(arg)) {
        const auto *o = typed.find_object(arg);
        if (!o)
          throw Error(ErrorCode::UnknownInstance,
                      "correction " + a.str() + " mentions unknown instance '" + arg + "'");
        state.instances.emplace(o->id, o->type);
        revealed.insert(o->id);
      }
  if (!revealed.empty()) {
    for (const auto &a : static_atoms(typed, vocab, config, revealed)) {
      bool known = true;
      for (const auto &arg : a.args)
        known = known && state.instances.count(arg);
      if (known)
        state.atoms.insert(a);
    }
  }

  for (const auto &a : corrections.add)
    vocab.check_ground(a, state.instances);
  for (const auto &a : corrections.remove)
    state.atoms.erase(a);
  state.atoms.insert(corrections.add.begin(), corrections.add.end());

  std::map<std::string, std::string> on_of;
  std::map<std::string, std::string> under;
  for (const auto &a : state.atoms) {
    if (a.predicate != predicates::on)
      continue;
    const auto &top = a.args[0];
    const auto &bottom = a.args[1];
    if (top == bottom)
      throw Error(ErrorCode::InconsistentCorrection, a.str() + " puts an object on itself");
    if (!on_of.emplace(top, bottom).second)
      throw Error(ErrorCode::InconsistentCorrection,
                  top + " is on both " + on_of[top] + " and " + bottom);
    if (!under.emplace(bottom, top).second)
      throw Error(ErrorCode::InconsistentCorrection,
                  "both " + under[bottom] + " and " + top + " are on " + bottom);
  }
  for (const auto &[id, type] : state.instances) {
    if (typed.is_held(id))
      continue;
    const Atom clear{predicates::clear, {id}};
    const bool covered = under.count(id) != 0;
    if (covered && state.holds(clear)) {
      if (corrections.add.count(clear))
        throw Error(ErrorCode::InconsistentCorrection,
                    "clear(" + id + ") asserted while " + under[id] + " is on " + id);
      state.atoms.erase(clear);
    } else if (!covered && !state.holds(clear)) {
      if (corrections.remove.count(clear))
        throw Error(ErrorCode::InconsistentCorrection,
                    "clear(" + id + ") retracted but nothing is on " + id);
      state.atoms.insert(clear);
    }
  }
  return state;
}

} // namespace irp
