#include "fixtures.hpp"
#include "generators.hpp"
#include "irp/error.hpp"
#include "irp/pddl.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace irp;
using testutil::at;
using testutil::code_of;

namespace {

// The published fragments, wrapped into complete definitions. The action block
// is missing its closing parenthesis and the :init block has one too few.
const std::string kPublishedAction = R"((:action move
 :parameters (?obj - object
              ?A - position ?B - position)
 :precondition (and (on ?obj ?A)(clear ?B)
            not(on ?obj ?B) not(clear ?A))
 :effect (and (on ?obj ?B) (clear ?A)
           not(on ?obj ?A) not(clear ?B)))";

const std::string kPublishedProblem = R"((:objects obj1 obj2 - object
          A B C - position)
(:init (and (on obj1 A) (on obj2 B)
            (clear C))
(:goal (and (on obj1 B) (on obj2 A))))";

PddlDomain published_domain() {
  return parse_domain("(define (domain blocks)\n"
                      "(:types position object - element)\n"
                      "(:predicates (clear ?x - element) (on ?x - object ?y - element))\n" +
                      kPublishedAction + "))");
}

PddlProblem published_problem(const PddlDomain &d) {
  std::string init_fixed = kPublishedProblem;
  init_fixed.replace(init_fixed.find("(clear C))"), 10, "(clear C)))");
  return parse_problem("(define (problem swap) (:domain blocks)\n" + init_fixed + ")", d);
}

} // namespace

TEST_CASE("published move block parses") {
  const PddlDomain d = published_domain();
  REQUIRE(d.actions.size() == 1);
  const auto &a = d.actions[0];
  CHECK(a.params.size() == 3);
  CHECK(a.pre.size() == 4);
  int negatives = 0;
  for (const auto &l : a.pre)
    negatives += !l.positive();
  CHECK(negatives == 2);
  CHECK(a.eff_plus == std::set<Atom>{at("on", {"?obj", "?B"}), at("clear", {"?A"})});
  CHECK(a.eff_minus == std::set<Atom>{at("on", {"?obj", "?A"}), at("clear", {"?B"})});
  CHECK(d == fixtures::move_domain());
}

TEST_CASE("published swap problem parses") {
  const PddlDomain d = published_domain();
  const PddlProblem p = published_problem(d);
  CHECK(p.init == std::set<Atom>{at("on", {"obj1", "A"}), at("on", {"obj2", "B"}), at("clear", {"C"})});
  CHECK(p.goal == std::set<Literal>{Literal::pos(at("on", {"obj1", "B"})),
                                    Literal::pos(at("on", {"obj2", "A"}))});
  CHECK(p.objects.size() == 5);
  CHECK(p == fixtures::swap_problem());
}

TEST_CASE("canonical emission") {
  const PddlDomain d = fixtures::move_domain();
  const std::string text = emit_domain(d);
  CHECK(text.find("(:requirements :strips :typing :negative-preconditions)") != std::string::npos);
  CHECK(text.find("position object - element") != std::string::npos);
  CHECK(text.find("(not (on ?obj ?B))") != std::string::npos);
  CHECK(parse_domain(text) == d);
  CHECK(emit_domain(parse_domain(text)) == text);

  const PddlProblem p = fixtures::swap_problem();
  const std::string ptext = emit_problem(p);
  CHECK(ptext.find("(:domain blocks)") != std::string::npos);
  CHECK(parse_problem(ptext, d) == p);
  CHECK(emit_problem(parse_problem(ptext, d)) == ptext);
}

TEST_CASE("built-in hierarchy emits both type clauses") {
  PddlDomain d;
  d.name = "workbench";
  d.types = TypeHierarchy::builtin();
  d.predicates = Vocabulary::builtin().predicates;
  const std::string text = emit_domain(d);
  CHECK(text.find("position object - element") != std::string::npos);
  CHECK(text.find("base cube roof - object") != std::string::npos);
  CHECK(parse_domain(text) == d);
}

TEST_CASE("stacked init atoms are emitted verbatim") {
  PddlDomain d;
  d.name = "workbench";
  d.types = TypeHierarchy::builtin();
  d.predicates = Vocabulary::builtin().predicates;
  PddlProblem p;
  p.name = "stack";
  p.domain_name = "workbench";
  p.objects = {{"c1", types::cube}, {"c2", types::cube}, {"A", types::position}};
  p.init = {at("on", {"c2", "c1"}), at("on", {"c1", "A"}), at("clear", {"c2"})};
  p.goal = {Literal::pos(at("on", {"c1", "c2"}))};
  const std::string text = emit_problem(p);
  CHECK(text.find("(on c2 c1)") != std::string::npos);
  CHECK(parse_problem(text, d) == p);
}

TEST_CASE("parser errors") {
  CHECK(code_of([] { parse_domain("(define (domain d) (:requirements :htn))"); }) ==
        ErrorCode::UnknownRequirement);
  CHECK(code_of([] { parse_domain("(define (domain d) (:types a - ghost))"); }) ==
        ErrorCode::UnknownType);
  CHECK(code_of([] { parse_domain("(define (domain d)"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] {
          parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) "
                       ":precondition (q ?x) :effect (p ?x)))");
        }) == ErrorCode::UndeclaredPredicate);
  CHECK(code_of([] {
          parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) "
                       ":precondition (p ?x ?x) :effect (p ?x)))");
        }) == ErrorCode::ArityMismatch);
  const auto d = fixtures::move_domain();
  CHECK(code_of([&] {
          parse_problem("(define (problem p) (:domain blocks) (:objects a - object) "
                        "(:init (on a Z)) (:goal (clear a)))",
                        d);
        }) == ErrorCode::UndeclaredObject);

  SUBCASE("syntax errors carry a position") {
    try {
      parse_domain("(define (domain d)\n  (:predicates (p ?x))\n  )\n)");
      FAIL("expected SyntaxError");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("4:") != std::string::npos);
    }
  }
}

TEST_CASE("keywords are case-insensitive and comments are skipped") {
  const auto d = parse_domain("; header\n(DEFINE (DOMAIN blocks) ; name\n"
                              "(:REQUIREMENTS :STRIPS :TYPING :NEGATIVE-PRECONDITIONS)\n"
                              "(:TYPES position object - element)\n"
                              "(:PREDICATES (clear ?x - element) (on ?x - object ?y - element))\n"
                              "(:ACTION move :PARAMETERS (?obj - object ?A - position ?B - position)\n"
                              ":PRECONDITION (AND (on ?obj ?A) (clear ?B) (NOT (on ?obj ?B)) "
                              "(NOT (clear ?A)))\n"
                              ":EFFECT (AND (on ?obj ?B) (clear ?A) (NOT (on ?obj ?A)) "
                              "(NOT (clear ?B)))))");
  CHECK(d == fixtures::move_domain());
}

TEST_CASE("empty domain") {
  PddlDomain d;
  d.name = "empty";
  d.types = TypeHierarchy::builtin();
  const std::string text = emit_domain(d);
  CHECK(text.find(":action") == std::string::npos);
  CHECK(parse_domain(text) == d);
}

TEST_CASE("generated domains round trip") {
  gen::Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const PddlDomain d = gen::domain(rng);
    const std::string text = emit_domain(d);
    const PddlDomain back = parse_domain(text);
    REQUIRE_MESSAGE(back == d, text);
    REQUIRE(emit_domain(back) == text);
    const PddlProblem p = gen::problem(rng, d);
    const std::string ptext = emit_problem(p);
    const PddlProblem pback = parse_problem(ptext, back);
    REQUIRE_MESSAGE(pback == p, ptext);
    REQUIRE(emit_problem(pback) == ptext);
  }
}
