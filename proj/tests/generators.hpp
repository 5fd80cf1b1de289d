#pragma once

// Random inputs shared by the property suites and the acceptance binary.

#include "irp/pddl.hpp"
#include "irp/world_state.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class T> const T &pick(Rng &rng, const std::vector<T> &v) {
  return v[static_cast<size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

// Two observations over the same instances with independent random atoms.
inline std::pair<irp::WorldState, irp::WorldState> state_pair(Rng &rng) {
  irp::WorldState o1, o2;
  const int objects = uniform(rng, 0, 4);
  const int positions = uniform(rng, 1, 4);
  std::vector<std::string> obj_ids, all_ids;
  for (int i = 0; i < objects; ++i) {
    obj_ids.push_back("o" + std::to_string(i + 1));
    o1.instances[obj_ids.back()] = irp::types::cube;
  }
  for (int i = 0; i < positions; ++i)
    o1.instances[std::string(1, static_cast<char>('A' + i))] = irp::types::position;
  for (const auto &[id, t] : o1.instances)
    all_ids.push_back(id);
  o2.instances = o1.instances;

  std::vector<irp::Atom> universe;
  for (const auto &e : all_ids)
    universe.push_back({"clear", {e}});
  for (const auto &o : obj_ids) {
    universe.push_back({"flat", {o}});
    universe.push_back({"thin", {o}});
    for (const auto &e : all_ids) {
      universe.push_back({"on", {o, e}});
      universe.push_back({"stackable", {o, e}});
    }
  }
  std::bernoulli_distribution coin(0.4);
  for (const auto &a : universe) {
    if (coin(rng))
      o1.atoms.insert(a);
    if (coin(rng))
      o2.atoms.insert(a);
  }
  return {o1, o2};
}

inline std::string ident(Rng &rng, const std::string &prefix) {
  static const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::string s = prefix;
  const int n = uniform(rng, 1, 4);
  for (int i = 0; i < n; ++i)
    s += letters[static_cast<size_t>(uniform(rng, 0, 25))];
  return s;
}

// Random typed STRIPS domain: the built-in hierarchy plus random subtypes,
// random predicates of arity 0..3, and up to five well-formed actions.
inline irp::PddlDomain domain(Rng &rng) {
  using namespace irp;
  PddlDomain d;
  d.name = ident(rng, "dom-");
  d.types = TypeHierarchy::builtin();
  const int extra = uniform(rng, 0, 3);
  for (int i = 0; i < extra; ++i) {
    const auto all = d.types.ordered();
    d.types.add(TypeTag{"t" + std::to_string(i) + ident(rng, "")}, pick(rng, all));
  }
  const auto all_types = d.types.ordered();

  // clear(element) always exists so every parameter can be mentioned.
  d.predicates = Vocabulary::builtin().predicates;
  const int preds = uniform(rng, 0, 4);
  for (int i = 0; i < preds; ++i) {
    PredicateSchema s{"p" + std::to_string(i) + ident(rng, "-"), {}};
    const int arity = uniform(rng, 0, 3);
    for (int k = 0; k < arity; ++k)
      s.params.push_back(pick(rng, all_types));
    d.predicates[s.name] = s;
  }
  std::vector<PredicateSchema> schemas;
  for (const auto &[n, s] : d.predicates)
    schemas.push_back(s);

  const int actions = uniform(rng, 0, 5);
  for (int i = 0; i < actions; ++i) {
    HighLevelAction a;
    a.name = "act" + std::to_string(i) + ident(rng, "-");
    const int nparams = uniform(rng, 0, 4);
    for (int k = 0; k < nparams; ++k)
      a.params.push_back({"?v" + std::to_string(k), pick(rng, all_types), "", false});

    // A random atom whose argument types fit, or nullopt after a few tries.
    auto random_atom = [&]() -> std::optional<Atom> {
      for (int attempt = 0; attempt < 8; ++attempt) {
        const auto &s = pick(rng, schemas);
        Atom atom{s.name, {}};
        bool ok = true;
        for (const auto &t : s.params) {
          std::vector<std::string> fits;
          for (const auto &p : a.params)
            if (d.types.is_subtype(p.type, t))
              fits.push_back(p.name);
          if (fits.empty()) {
            ok = false;
            break;
          }
          atom.args.push_back(pick(rng, fits));
        }
        if (ok)
          return atom;
      }
      return std::nullopt;
    };

    const int lits = uniform(rng, 0, 6);
    for (int k = 0; k < lits; ++k) {
      const auto atom = random_atom();
      if (!atom)
        continue;
      switch (uniform(rng, 0, 3)) {
      case 0:
        if (!a.pre.count(Literal::neg(*atom)))
          a.pre.insert(Literal::pos(*atom));
        break;
      case 1:
        if (!a.pre.count(Literal::pos(*atom)))
          a.pre.insert(Literal::neg(*atom));
        break;
      case 2:
        if (!a.eff_minus.count(*atom))
          a.eff_plus.insert(*atom);
        break;
      default:
        if (!a.eff_plus.count(*atom))
          a.eff_minus.insert(*atom);
        break;
      }
    }
    for (const auto &p : a.params)
      if (!a.used_variables().count(p.name))
        a.pre.insert(Literal::pos(Atom{"clear", {p.name}}));
    d.actions.push_back(a);
  }
  return d;
}

inline irp::PddlProblem problem(Rng &rng, const irp::PddlDomain &d) {
  using namespace irp;
  PddlProblem p;
  p.name = ident(rng, "prob-");
  p.domain_name = d.name;
  const auto types = d.types.ordered();
  const int n = uniform(rng, 1, 6);
  for (int i = 0; i < n; ++i) {
    const std::string id = (uniform(rng, 0, 1) ? "Obj" : "loc") + std::to_string(i);
    p.objects[id] = pick(rng, types);
  }
  std::vector<Atom> universe;
  for (const auto &[name, s] : d.predicates) {
    std::vector<std::vector<std::string>> tuples{{}};
    for (const auto &t : s.params) {
      std::vector<std::vector<std::string>> next;
      for (const auto &tuple : tuples)
        for (const auto &[id, type] : p.objects)
          if (d.types.is_subtype(type, t)) {
            auto ext = tuple;
            ext.push_back(id);
            next.push_back(std::move(ext));
          }
      tuples = std::move(next);
    }
    for (auto &tuple : tuples)
      universe.push_back({name, std::move(tuple)});
  }
  std::bernoulli_distribution coin(0.3);
  for (const auto &a : universe)
    if (coin(rng))
      p.init.insert(a);
  const int goals = uniform(rng, 1, 4);
  for (int i = 0; i < goals && !universe.empty(); ++i) {
    const auto &a = pick(rng, universe);
    const Literal l = uniform(rng, 0, 2) ? Literal::pos(a) : Literal::neg(a);
    const Literal opposite{l.positive() ? Polarity::Neg : Polarity::Pos, a};
    if (!p.goal.count(opposite))
      p.goal.insert(l);
  }
  return p;
}

} // namespace gen
