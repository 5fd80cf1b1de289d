#pragma once

#include "irp/inference.hpp"
#include "irp/types.hpp"
#include "irp/world_state.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace irp {

// Typed STRIPS with negative preconditions. Requirements are fixed to
// :strips :typing :negative-preconditions.
struct PddlDomain {
  std::string name;
  TypeHierarchy types;
  std::map<std::string, PredicateSchema> predicates;
  // PDDL projection only: parameter origins and low-level links are dropped.
  std::vector<HighLevelAction> actions;

  Vocabulary vocabulary() const { return {types, predicates}; }
  bool operator==(const PddlDomain &) const = default;
};

struct PddlProblem {
  std::string name;
  std::string domain_name;
  InstanceTypes objects;
  std::set<Atom> init;
  std::set<Literal> goal;

  bool operator==(const PddlProblem &) const = default;
};

// Strips everything PDDL cannot carry (origins, landmark flags, low-level link).
HighLevelAction pddl_projection(const HighLevelAction &action);

// Canonical text: lowercase keywords, two-space indent, literals sorted.
// emit(parse(emit(x))) == emit(x).
std::string emit_domain(const PddlDomain &domain);
std::string emit_problem(const PddlProblem &problem);

// Keywords are case-insensitive, `;` starts a comment. Inside a conjunction
// `not (p ...)` is accepted alongside `(not (p ...))`.
PddlDomain parse_domain(std::string_view text);
PddlProblem parse_problem(std::string_view text, const PddlDomain &domain);

} // namespace irp
