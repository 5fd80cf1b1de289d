#pragma once

#include "irp/types.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace irp {

// A predicate applied to arguments. Arguments are instance ids for ground
// atoms and `?`-prefixed variables for lifted ones.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const Atom &) const = default;

  // on(obj, A)
  std::string str() const;
};

using GroundAtom = Atom;

enum class Polarity { Pos, Neg };

// Literals order positives before negatives, then by atom.
struct Literal {
  Polarity polarity = Polarity::Pos;
  Atom atom;

  static Literal pos(Atom a) { return {Polarity::Pos, std::move(a)}; }
  static Literal neg(Atom a) { return {Polarity::Neg, std::move(a)}; }

  bool positive() const { return polarity == Polarity::Pos; }
  auto operator<=>(const Literal &) const = default;

  // on(obj, A) or ¬on(obj, A)
  std::string str() const;
};

bool is_variable(const std::string &arg);

// "on(obj, A)" -> "obj is on A"; negation -> "obj is not on A".
std::string to_english(const Literal &lit);
std::string to_english(const Atom &atom);

struct PredicateSchema {
  std::string name;
  std::vector<TypeTag> params;

  bool operator==(const PredicateSchema &) const = default;
};

namespace predicates {
inline const std::string clear = "clear";
inline const std::string on = "on";
inline const std::string stackable = "stackable";
inline const std::string flat = "flat";
inline const std::string thin = "thin";
} // namespace predicates

using InstanceTypes = std::map<std::string, TypeTag>;

// Types plus predicate schemas: the symbol table every atom is checked
// against.
struct Vocabulary {
  TypeHierarchy types;
  std::map<std::string, PredicateSchema> predicates;

  // Built-in hierarchy and the five schemas clear(ELEMENT),
  // on(OBJECT, ELEMENT), stackable(OBJECT, ELEMENT), flat(OBJECT),
  // thin(OBJECT).
  static Vocabulary builtin();

  const PredicateSchema &schema(const std::string &name) const;

  // Ground check: arity, argument existence and argument types.
  void check_ground(const Atom &atom, const InstanceTypes &instances) const;
  // Lifted check against variable types.
  void check_lifted(const Atom &atom, const std::map<std::string, TypeTag> &vars) const;

  bool operator==(const Vocabulary &) const = default;
};

// Closed-world state: atoms absent from `atoms` are false.
struct WorldState {
  InstanceTypes instances;
  std::set<Atom> atoms;

  bool holds(const Atom &atom) const { return atoms.count(atom) != 0; }
  bool operator==(const WorldState &) const = default;

  // clear(e) <-> no on(., e), for every element that appears in some on/clear
  // atom or is a position/object instance. Returns human-readable issues.
  std::vector<std::string> coupling_issues(const Vocabulary &vocab) const;
};

// (atoms \ eff_minus) ∪ eff_plus.
WorldState apply_effects(const WorldState &state, const std::set<Atom> &eff_plus,
                         const std::set<Atom> &eff_minus);

std::set<Atom> set_difference(const std::set<Atom> &a, const std::set<Atom> &b);

} // namespace irp
