#pragma once

#include "irp/pddl.hpp"

#include <string>

namespace fixtures {

inline const std::string kMoveDomain = R"((define (domain blocks)
  (:requirements :strips :typing :negative-preconditions)
  (:types position object - element)
  (:predicates (clear ?x - element) (on ?x - object ?y - element))
  (:action move
    :parameters (?obj - object ?A - position ?B - position)
    :precondition (and (on ?obj ?A) (clear ?B) (not (on ?obj ?B)) (not (clear ?A)))
    :effect (and (on ?obj ?B) (clear ?A) (not (on ?obj ?A)) (not (clear ?B)))))
)";

inline const std::string kSwapProblem = R"((define (problem swap)
  (:domain blocks)
  (:objects obj1 obj2 - object A B C - position)
  (:init (on obj1 A) (on obj2 B) (clear C))
  (:goal (and (on obj1 B) (on obj2 A))))
)";

inline irp::PddlDomain move_domain() { return irp::parse_domain(kMoveDomain); }
inline irp::PddlProblem swap_problem() {
  static const auto d = move_domain();
  return irp::parse_problem(kSwapProblem, d);
}

} // namespace fixtures
