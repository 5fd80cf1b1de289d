#include "irp/world_state.hpp"

#include "irp/error.hpp"

#include <algorithm>
#include <iterator>

namespace irp {

std::string Atom::str() const {
  std::string out = predicate + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i)
      out += ", ";
    out += args[i];
  }
  return out + ")";
}

std::string Literal::str() const {
  return (positive() ? "" : "¬") + atom.str();
}

bool is_variable(const std::string &arg) { return !arg.empty() && arg[0] == '?'; }

namespace {

std::string display(const std::string &arg) {
  return is_variable(arg) ? arg.substr(1) : arg;
}

std::string english(const Atom &a, bool negated) {
  const std::string is = negated ? " is not " : " is ";
  const auto &p = a.predicate;
  if (p == predicates::on && a.args.size() == 2)
    return display(a.args[0]) + is + "on " + display(a.args[1]);
  if (p == predicates::stackable && a.args.size() == 2)
    return display(a.args[0]) + is + "stackable on " + display(a.args[1]);
  if ((p == predicates::clear || p == predicates::flat || p == predicates::thin) &&
      a.args.size() == 1)
    return display(a.args[0]) + is + p;
  std::string out = negated ? "not " : "";
  out += p + "(";
  for (size_t i = 0; i < a.args.size(); ++i)
    out += (i ? ", " : "") + display(a.args[i]);
  return out + ")";
}

} // namespace

std::string to_english(const Literal &lit) { return english(lit.atom, !lit.positive()); }
std::string to_english(const Atom &atom) { return english(atom, false); }

Vocabulary Vocabulary::builtin() {
  Vocabulary v{TypeHierarchy::builtin(), {}};
  auto add = [&](const std::string &name, std::vector<TypeTag> params) {
    v.predicates[name] = PredicateSchema{name, std::move(params)};
  };
  add(predicates::clear, {types::element});
  add(predicates::on, {types::object, types::element});
  add(predicates::stackable, {types::object, types::element});
  add(predicates::flat, {types::object});
  add(predicates::thin, {types::object});
  return v;
}

const PredicateSchema &Vocabulary::schema(const std::string &name) const {
  auto it = predicates.find(name);
  if (it == predicates.end())
    throw Error(ErrorCode::UndeclaredPredicate, "predicate '" + name + "' is not declared");
  return it->second;
}

void Vocabulary::check_ground(const Atom &atom, const InstanceTypes &instances) const {
  const auto &s = schema(atom.predicate);
  if (s.params.size() != atom.args.size())
    throw Error(ErrorCode::ArityMismatch, atom.str() + " expects " +
                                              std::to_string(s.params.size()) + " argument(s)");
  for (size_t i = 0; i < atom.args.size(); ++i) {
    auto it = instances.find(atom.args[i]);
    if (it == instances.end())
      throw Error(ErrorCode::UnknownInstance,
                  "'" + atom.args[i] + "' in " + atom.str() + " is not an instance");
    if (!types.is_subtype(it->second, s.params[i]))
      throw Error(ErrorCode::TypeViolation, atom.str() + ": '" + atom.args[i] + "' is " +
                                                it->second.name + ", expected " +
                                                s.params[i].name);
  }
}

void Vocabulary::check_lifted(const Atom &atom,
                              const std::map<std::string, TypeTag> &vars) const {
  const auto &s = schema(atom.predicate);
  if (s.params.size() != atom.args.size())
    throw Error(ErrorCode::ArityMismatch, atom.str() + " expects " +
                                              std::to_string(s.params.size()) + " argument(s)");
  for (size_t i = 0; i < atom.args.size(); ++i) {
    auto it = vars.find(atom.args[i]);
    if (it == vars.end())
      throw Error(ErrorCode::DanglingVariable,
                  "variable '" + atom.args[i] + "' in " + atom.str() + " is not a parameter");
    if (!types.is_subtype(it->second, s.params[i]))
      throw Error(ErrorCode::TypeViolation, atom.str() + ": " + atom.args[i] + " - " +
                                                it->second.name + " is not a " +
                                                s.params[i].name);
  }
}

std::vector<std::string> WorldState::coupling_issues(const Vocabulary &vocab) const {
  std::vector<std::string> issues;
  std::set<std::string> supports;
  for (const auto &a : atoms)
    if (a.predicate == predicates::on && a.args.size() == 2)
      supports.insert(a.args[1]);
  for (const auto &[id, type] : instances) {
    if (!vocab.types.contains(type) || !vocab.types.is_subtype(type, types::element))
      continue;
    const bool clear = holds(Atom{predicates::clear, {id}});
    const bool covered = supports.count(id) != 0;
    if (clear && covered)
      issues.push_back("clear(" + id + ") holds although something is on " + id);
  }
  return issues;
}

std::set<Atom> set_difference(const std::set<Atom> &a, const std::set<Atom> &b) {
  std::set<Atom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

WorldState apply_effects(const WorldState &state, const std::set<Atom> &eff_plus,
                         const std::set<Atom> &eff_minus) {
  for (const auto &a : eff_plus)
    if (eff_minus.count(a))
      throw Error(ErrorCode::InvalidArgument, a.str() + " is both added and deleted");
  for (const auto *set : {&eff_plus, &eff_minus})
    for (const auto &a : *set)
      for (const auto &arg : a.args)
        if (!state.instances.count(arg))
          throw Error(ErrorCode::UnknownInstance,
                      "effect " + a.str() + " references unknown instance '" + arg + "'");
  WorldState out = state;
  for (const auto &a : eff_minus)
    out.atoms.erase(a);
  out.atoms.insert(eff_plus.begin(), eff_plus.end());
  return out;
}

} // namespace irp
