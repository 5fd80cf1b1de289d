#include "irp/json_io.hpp"

#include "irp/error.hpp"

#include <cctype>

namespace irp {

namespace {

std::string trim(const std::string &s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

template <class T> T get_or(const json &j, const char *key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

} // namespace

Atom parse_atom(const std::string &text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw Error(ErrorCode::SyntaxError, "expected pred(arg, ...), got '" + text + "'");
  Atom a{trim(s.substr(0, open)), {}};
  if (a.predicate.empty())
    throw Error(ErrorCode::SyntaxError, "missing predicate name in '" + text + "'");
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (!trim(inner).empty()) {
    size_t start = 0;
    while (true) {
      const auto comma = inner.find(',', start);
      std::string arg = trim(inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start));
      if (arg.empty())
        throw Error(ErrorCode::SyntaxError, "empty argument in '" + text + "'");
      a.args.push_back(std::move(arg));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
  }
  return a;
}

Literal parse_literal(const std::string &text) {
  std::string s = trim(text);
  for (const std::string prefix : {"¬", "!", "not "}) {
    if (s.rfind(prefix, 0) == 0)
      return Literal::neg(parse_atom(s.substr(prefix.size())));
  }
  return Literal::pos(parse_atom(s));
}

void to_json(json &j, const Vec3 &v) { j = json::array({v.x, v.y, v.z}); }
void from_json(const json &j, Vec3 &v) {
  if (!j.is_array() || j.size() != 3)
    throw Error(ErrorCode::InvalidArgument, "vector must be [x, y, z]");
  v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void to_json(json &j, const Quat &q) { j = json::array({q.w, q.x, q.y, q.z}); }
void from_json(const json &j, Quat &q) {
  if (!j.is_array() || j.size() != 4)
    throw Error(ErrorCode::InvalidArgument, "quaternion must be [w, x, y, z]");
  q = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

void to_json(json &j, const Pose &p) {
  j = {{"position", p.position}, {"orientation", p.orientation}};
}
void from_json(const json &j, Pose &p) {
  p.position = j.at("position").get<Vec3>();
  p.orientation = get_or(j, "orientation", Quat{});
}

void to_json(json &j, const TypeTag &t) { j = t.name; }
void from_json(const json &j, TypeTag &t) { t.name = j.get<std::string>(); }

void to_json(json &j, const TypeHierarchy &h) {
  json types = json::array();
  for (const auto &t : h.ordered())
    if (auto p = h.parent(t))
      types.push_back({t.name, p->name});
  j = {{"root", h.root().name}, {"types", types}};
}
void from_json(const json &j, TypeHierarchy &h) {
  h = TypeHierarchy(TypeTag{j.at("root").get<std::string>()});
  for (const auto &e : j.at("types"))
    h.add(TypeTag{e.at(0).get<std::string>()}, TypeTag{e.at(1).get<std::string>()});
}

void to_json(json &j, const Atom &a) { j = {{"predicate", a.predicate}, {"args", a.args}}; }
void from_json(const json &j, Atom &a) {
  if (j.is_string()) {
    a = parse_atom(j.get<std::string>());
    return;
  }
  a.predicate = j.at("predicate").get<std::string>();
  a.args = get_or(j, "args", std::vector<std::string>{});
}

void to_json(json &j, const Literal &l) {
  j = l.atom;
  j["positive"] = l.positive();
}
void from_json(const json &j, Literal &l) {
  if (j.is_string()) {
    l = parse_literal(j.get<std::string>());
    return;
  }
  l.atom = j.get<Atom>();
  l.polarity = get_or(j, "positive", true) ? Polarity::Pos : Polarity::Neg;
}

void to_json(json &j, const PredicateSchema &s) { j = {{"name", s.name}, {"params", s.params}}; }
void from_json(const json &j, PredicateSchema &s) {
  s.name = j.at("name").get<std::string>();
  s.params = j.at("params").get<std::vector<TypeTag>>();
}

void to_json(json &j, const Vocabulary &v) {
  json preds = json::array();
  for (const auto &[name, schema] : v.predicates)
    preds.push_back(schema);
  j = {{"types", v.types}, {"predicates", preds}};
}
void from_json(const json &j, Vocabulary &v) {
  v.types = j.at("types").get<TypeHierarchy>();
  v.predicates.clear();
  for (const auto &p : j.at("predicates")) {
    auto s = p.get<PredicateSchema>();
    v.predicates.emplace(s.name, s);
  }
}

void to_json(json &j, const WorldState &w) {
  j = {{"instances", w.instances}, {"atoms", w.atoms}};
}
void from_json(const json &j, WorldState &w) {
  w.instances = j.at("instances").get<InstanceTypes>();
  w.atoms = j.at("atoms").get<std::set<Atom>>();
}

void to_json(json &j, const Arm &a) { j = to_string(a); }
void from_json(const json &j, Arm &a) { a = arm_from_string(j.get<std::string>()); }
void to_json(json &j, const Gripper &g) { j = to_string(g); }
void from_json(const json &j, Gripper &g) { g = gripper_from_string(j.get<std::string>()); }

void to_json(json &j, const PerceptionMode &m) { j = to_string(m); }
void from_json(const json &j, PerceptionMode &m) {
  const auto s = j.get<std::string>();
  if (s == "full")
    m = PerceptionMode::Full;
  else if (s == "stack_blind")
    m = PerceptionMode::StackBlind;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown perception mode '" + s + "'");
}

void to_json(json &j, const ObjectInstance &o) {
  j = {{"id", o.id}, {"pose", o.pose}, {"dims", o.dims}, {"type", o.type}};
}
void from_json(const json &j, ObjectInstance &o) {
  o.id = j.at("id").get<std::string>();
  o.pose = j.at("pose").get<Vec3>();
  o.dims = j.at("dims").get<Vec3>();
  o.type = get_or(j, "type", TypeTag{});
}

void to_json(json &j, const PositionInstance &p) { j = {{"id", p.id}, {"x", p.x}, {"y", p.y}}; }
void from_json(const json &j, PositionInstance &p) {
  p.id = j.at("id").get<std::string>();
  p.x = j.at("x").get<double>();
  p.y = j.at("y").get<double>();
}

void to_json(json &j, const Scene &s) {
  json held = json::object();
  for (const auto &[arm, id] : s.held)
    held[to_string(arm)] = id;
  j = {{"objects", s.objects}, {"positions", s.positions}, {"held", held}};
}
void from_json(const json &j, Scene &s) {
  s.objects = get_or(j, "objects", std::vector<ObjectInstance>{});
  s.positions = get_or(j, "positions", std::vector<PositionInstance>{});
  s.held.clear();
  if (j.contains("held"))
    for (const auto &[arm, id] : j.at("held").items())
      s.held.emplace(arm_from_string(arm), id.get<std::string>());
}

void to_json(json &j, const StateCorrections &c) {
  j = {{"types", c.types}, {"add", c.add}, {"remove", c.remove}};
}
void from_json(const json &j, StateCorrections &c) {
  c.types = get_or(j, "types", std::map<std::string, TypeTag>{});
  c.add = get_or(j, "add", std::set<Atom>{});
  c.remove = get_or(j, "remove", std::set<Atom>{});
}

void to_json(json &j, const LandmarkDescriptor &d) {
  j = {{"type", d.type}, {"dims", d.dims}, {"original_id", d.original_id}};
}
void from_json(const json &j, LandmarkDescriptor &d) {
  d.type = j.at("type").get<TypeTag>();
  d.dims = j.at("dims").get<Vec3>();
  d.original_id = j.at("original_id").get<std::string>();
}

void to_json(json &j, const FrameRef &f) {
  if (f.kind == FrameRef::Kind::Base)
    j = "base";
  else
    j = {{"landmark", *f.landmark}};
}
void from_json(const json &j, FrameRef &f) {
  if (j.is_string() && j.get<std::string>() == "base")
    f = FrameRef::base();
  else
    f = FrameRef::on(j.at("landmark").get<LandmarkDescriptor>());
}

void to_json(json &j, const Keyframe &k) {
  j = {{"arm", k.arm}, {"pose", k.pose}, {"frame", k.frame}, {"gripper", k.gripper}};
}
void from_json(const json &j, Keyframe &k) {
  k.arm = j.at("arm").get<Arm>();
  k.pose = j.at("pose").get<Pose>();
  k.frame = j.at("frame").get<FrameRef>();
  k.gripper = j.at("gripper").get<Gripper>();
}

void to_json(json &j, const LowLevelAction &a) {
  j = {{"name", a.name}, {"keyframes", a.keyframes}};
}
void from_json(const json &j, LowLevelAction &a) {
  a.name = j.at("name").get<std::string>();
  a.keyframes = j.at("keyframes").get<std::vector<Keyframe>>();
}

void to_json(json &j, const Parameter &p) {
  j = {{"name", p.name}, {"type", p.type}, {"origin", p.origin}, {"landmark", p.landmark}};
}
void from_json(const json &j, Parameter &p) {
  p.name = j.at("name").get<std::string>();
  p.type = j.at("type").get<TypeTag>();
  p.origin = get_or(j, "origin", std::string{});
  p.landmark = get_or(j, "landmark", false);
}

void to_json(json &j, const HighLevelAction &a) {
  j = {{"name", a.name},         {"params", a.params},       {"pre", a.pre},
       {"eff_plus", a.eff_plus}, {"eff_minus", a.eff_minus}, {"low_level", a.low_level}};
}
void from_json(const json &j, HighLevelAction &a) {
  a.name = j.at("name").get<std::string>();
  a.params = j.at("params").get<std::vector<Parameter>>();
  a.pre = get_or(j, "pre", std::set<Literal>{});
  a.eff_plus = get_or(j, "eff_plus", std::set<Atom>{});
  a.eff_minus = get_or(j, "eff_minus", std::set<Atom>{});
  a.low_level = get_or(j, "low_level", std::string{});
}

void to_json(json &j, const GroundAction &a) { j = {{"name", a.name}, {"args", a.args}}; }
void from_json(const json &j, GroundAction &a) {
  a = {};
  a.name = j.at("name").get<std::string>();
  a.args = j.at("args").get<std::vector<std::string>>();
}

void to_json(json &j, const Plan &p) { j = {{"steps", p.steps}, {"cost", p.cost()}}; }
void from_json(const json &j, Plan &p) { p.steps = j.at("steps").get<std::vector<GroundAction>>(); }

void to_json(json &j, const ScriptedKeyframe &k) {
  j = {{"t", k.t}, {"arm", k.arm}, {"pose", k.pose}, {"gripper", k.gripper}, {"frame", k.frame}};
}
void from_json(const json &j, ScriptedKeyframe &k) {
  k.t = get_or(j, "t", 0.0);
  k.arm = j.at("arm").get<Arm>();
  k.pose = j.at("pose").get<Pose>();
  k.gripper = j.at("gripper").get<Gripper>();
  k.frame = get_or(j, "frame", std::string{});
}

void to_json(json &j, const DemoScript &s) {
  j = {{"name", s.name}, {"keyframes", s.keyframes}};
}
void from_json(const json &j, DemoScript &s) {
  s.name = j.at("name").get<std::string>();
  s.keyframes = j.at("keyframes").get<std::vector<ScriptedKeyframe>>();
}

} // namespace irp
