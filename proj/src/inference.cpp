#include "irp/inference.hpp"

#include "irp/error.hpp"

#include <algorithm>

namespace irp {

GroundConditions infer_ground_conditions(const WorldState &o1, const WorldState &o2) {
  if (o1.instances != o2.instances)
    throw Error(ErrorCode::InstanceMismatch, "observations cover different instances");
  GroundConditions g;
  g.eff_minus = set_difference(o1.atoms, o2.atoms);
  g.eff_plus = set_difference(o2.atoms, o1.atoms);
  for (const auto &a : g.eff_minus)
    g.pre.insert(Literal::pos(a));
  for (const auto &a : g.eff_plus)
    g.pre.insert(Literal::neg(a));
  return g;
}

const Parameter *HighLevelAction::param(const std::string &n) const {
  for (const auto &p : params)
    if (p.name == n)
      return &p;
  return nullptr;
}

std::map<std::string, TypeTag> HighLevelAction::variable_types() const {
  std::map<std::string, TypeTag> out;
  for (const auto &p : params)
    out.emplace(p.name, p.type);
  return out;
}

std::set<std::string> HighLevelAction::used_variables() const {
  std::set<std::string> out;
  auto take = [&](const Atom &a) { out.insert(a.args.begin(), a.args.end()); };
  for (const auto &l : pre)
    take(l.atom);
  for (const auto &a : eff_plus)
    take(a);
  for (const auto &a : eff_minus)
    take(a);
  return out;
}

void validate_action(const Vocabulary &vocab, const HighLevelAction &action,
                     bool require_param_coverage) {
  std::set<std::string> names;
  for (const auto &p : action.params) {
    if (!is_variable(p.name))
      throw Error(ErrorCode::InvalidArgument, "parameter '" + p.name + "' must start with '?'");
    if (!names.insert(p.name).second)
      throw Error(ErrorCode::DuplicateName, "parameter '" + p.name + "' declared twice in '" +
                                                action.name + "'");
    if (!vocab.types.contains(p.type))
      throw Error(ErrorCode::UnknownType, "parameter " + p.name + " has unknown type '" +
                                              p.type.name + "'");
  }
  const auto vars = action.variable_types();
  for (const auto &l : action.pre)
    vocab.check_lifted(l.atom, vars);
  for (const auto &a : action.eff_plus)
    vocab.check_lifted(a, vars);
  for (const auto &a : action.eff_minus) {
    vocab.check_lifted(a, vars);
    if (action.eff_plus.count(a))
      throw Error(ErrorCode::TypeViolation, "action '" + action.name + "' both adds and deletes " +
                                                a.str());
  }
  if (require_param_coverage) {
    const auto used = action.used_variables();
    for (const auto &p : action.params)
      if (!used.count(p.name))
        throw Error(ErrorCode::DanglingVariable,
                    "parameter " + p.name + " of '" + action.name + "' appears in no condition");
  }
}

namespace {

// Relational atoms come before property atoms so that a move reads
// on(?obj ?A), clear(?B) rather than the other way round.
bool reading_order(const Atom &a, const Atom &b) {
  if (a.args.size() != b.args.size())
    return a.args.size() > b.args.size();
  return a < b;
}

std::vector<Atom> ordered(const std::set<Atom> &atoms) {
  std::vector<Atom> out(atoms.begin(), atoms.end());
  std::stable_sort(out.begin(), out.end(), reading_order);
  return out;
}

std::string position_variable(int index) {
  if (index < 26)
    return std::string("?") + static_cast<char>('A' + index);
  return "?P" + std::to_string(index + 1);
}

Atom substitute(const Atom &a, const std::map<std::string, std::string> &sub) {
  Atom out{a.predicate, {}};
  for (const auto &arg : a.args) {
    auto it = sub.find(arg);
    out.args.push_back(it == sub.end() ? arg : it->second);
  }
  return out;
}

} // namespace

HighLevelAction lift_action(const std::string &name, const GroundConditions &ground,
                            const InstanceTypes &instances, const LowLevelAction *low_level) {
  std::vector<Atom> appearance;
  std::set<Atom> pos, neg;
  for (const auto &l : ground.pre)
    (l.positive() ? pos : neg).insert(l.atom);
  for (const std::set<Atom> *set :
       std::initializer_list<const std::set<Atom> *>{&pos, &neg, &ground.eff_plus, &ground.eff_minus})
    for (auto &a : ordered(*set))
      appearance.push_back(std::move(a));

  HighLevelAction action;
  action.name = name;
  const std::set<std::string> anchors =
      low_level ? low_level->landmark_ids() : std::set<std::string>{};
  if (low_level)
    action.low_level = low_level->name;

  std::map<std::string, std::string> to_var;
  int objects = 0;
  int positions = 0;
  int others = 0;
  const TypeHierarchy hierarchy = TypeHierarchy::builtin();
  for (const auto &a : appearance) {
    for (const auto &id : a.args) {
      if (to_var.count(id))
        continue;
      auto it = instances.find(id);
      if (it == instances.end())
        throw Error(ErrorCode::UntypedInstance, "instance '" + id + "' has no known type");
      const TypeTag &type = it->second;
      std::string var;
      if (hierarchy.contains(type) && hierarchy.is_subtype(type, types::object))
        var = ++objects == 1 ? "?obj" : "?obj" + std::to_string(objects);
      else if (type == types::position)
        var = position_variable(positions++);
      else
        var = "?e" + std::to_string(++others);
      to_var.emplace(id, var);
      action.params.push_back({var, type, id, anchors.count(id) != 0});
    }
  }
  for (const auto &l : ground.pre)
    action.pre.insert({l.polarity, substitute(l.atom, to_var)});
  for (const auto &a : ground.eff_plus)
    action.eff_plus.insert(substitute(a, to_var));
  for (const auto &a : ground.eff_minus)
    action.eff_minus.insert(substitute(a, to_var));
  return action;
}

GroundConditions ground_conditions(const HighLevelAction &action,
                                   const std::map<std::string, std::string> &substitution) {
  GroundConditions g;
  for (const auto &l : action.pre)
    g.pre.insert({l.polarity, substitute(l.atom, substitution)});
  for (const auto &a : action.eff_plus)
    g.eff_plus.insert(substitute(a, substitution));
  for (const auto &a : action.eff_minus)
    g.eff_minus.insert(substitute(a, substitution));
  return g;
}

std::map<std::string, std::string> origin_substitution(const HighLevelAction &action) {
  std::map<std::string, std::string> out;
  for (const auto &p : action.params)
    if (!p.origin.empty())
      out.emplace(p.name, p.origin);
  return out;
}

std::map<std::string, std::string> bind_arguments(const HighLevelAction &action,
                                                  const std::vector<std::string> &args) {
  if (args.size() != action.params.size())
    throw Error(ErrorCode::ArityMismatch, "'" + action.name + "' takes " +
                                              std::to_string(action.params.size()) +
                                              " argument(s), got " + std::to_string(args.size()));
  std::map<std::string, std::string> out;
  for (size_t i = 0; i < args.size(); ++i)
    out.emplace(action.params[i].name, args[i]);
  return out;
}

namespace {

void drop_unused_params(HighLevelAction &action) {
  const auto used = action.used_variables();
  for (const auto &p : action.params)
    if (!used.count(p.name) && p.landmark)
      throw Error(ErrorCode::DanglingVariable,
                  "removal would orphan " + p.name + ", which anchors the taught motion");
  std::erase_if(action.params, [&](const Parameter &p) { return !used.count(p.name); });
}

struct EditVisitor {
  const Vocabulary &vocab;
  HighLevelAction &a;

  void operator()(const edits::SetParamType &e) {
    auto it = std::find_if(a.params.begin(), a.params.end(),
                           [&](const Parameter &p) { return p.name == e.param; });
    if (it == a.params.end())
      throw Error(ErrorCode::NotFound, "'" + a.name + "' has no parameter " + e.param);
    if (!vocab.types.contains(e.type))
      throw Error(ErrorCode::UnknownType, "type '" + e.type.name + "' is not registered");
    it->type = e.type;
  }
  void operator()(const edits::AddPre &e) {
    vocab.check_lifted(e.literal.atom, a.variable_types());
    const Literal opposite{e.literal.positive() ? Polarity::Neg : Polarity::Pos, e.literal.atom};
    if (a.pre.count(opposite))
      throw Error(ErrorCode::TypeViolation, "precondition " + e.literal.str() +
                                                " contradicts " + opposite.str());
    a.pre.insert(e.literal);
  }
  void operator()(const edits::RemovePre &e) {
    if (!a.pre.erase(e.literal))
      throw Error(ErrorCode::NotFound, "'" + a.name + "' has no precondition " + e.literal.str());
    drop_unused_params(a);
  }
  void operator()(const edits::AddEffPlus &e) {
    vocab.check_lifted(e.atom, a.variable_types());
    if (a.eff_minus.count(e.atom))
      throw Error(ErrorCode::TypeViolation, e.atom.str() + " is already a delete effect");
    a.eff_plus.insert(e.atom);
  }
  void operator()(const edits::AddEffMinus &e) {
    vocab.check_lifted(e.atom, a.variable_types());
    if (a.eff_plus.count(e.atom))
      throw Error(ErrorCode::TypeViolation, e.atom.str() + " is already an add effect");
    a.eff_minus.insert(e.atom);
  }
  void operator()(const edits::RemoveEff &e) {
    if (!a.eff_plus.erase(e.atom) && !a.eff_minus.erase(e.atom))
      throw Error(ErrorCode::NotFound, "'" + a.name + "' has no effect " + e.atom.str());
    drop_unused_params(a);
  }
  void operator()(const edits::Rename &e) {
    if (e.name.empty())
      throw Error(ErrorCode::InvalidArgument, "action name must not be empty");
    a.name = e.name;
  }
};

} // namespace

HighLevelAction edit_action(const Vocabulary &vocab, const HighLevelAction &action,
                            const ActionEdit &edit) {
  HighLevelAction out = action;
  std::visit(EditVisitor{vocab, out}, edit);
  validate_action(vocab, out);
  return out;
}

HighLevelAction copy_action(const HighLevelAction &action, const std::string &new_name,
                            const std::set<std::string> &existing_names) {
  if (new_name.empty())
    throw Error(ErrorCode::InvalidArgument, "action name must not be empty");
  if (existing_names.count(new_name))
    throw Error(ErrorCode::DuplicateName, "an action named '" + new_name + "' already exists");
  HighLevelAction out = action;
  out.name = new_name;
  return out;
}

std::vector<ConditionRow> describe(const HighLevelAction &action) {
  std::vector<ConditionRow> rows;
  for (const auto &l : action.pre)
    rows.push_back({"pre", l, to_english(l)});
  for (const auto &a : action.eff_plus)
    rows.push_back({"eff+", Literal::pos(a), to_english(a)});
  for (const auto &a : action.eff_minus)
    rows.push_back({"eff-", Literal::neg(a), to_english(Literal::neg(a))});
  return rows;
}

} // namespace irp
