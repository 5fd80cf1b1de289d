#include "fixtures.hpp"
#include "irp/error.hpp"
#include "irp/planner.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <atomic>
#include <unordered_set>

using namespace irp;
using testutil::code_of;

TEST_CASE("swap task grounds to twelve move instances") {
  const auto task = ground_task(fixtures::move_domain(), fixtures::swap_problem());
  CHECK(task.actions.size() == 12);
  for (const auto &a : task.actions) {
    for (int x : a.add)
      CHECK(std::find(a.del.begin(), a.del.end(), x) == a.del.end());
    for (int x : a.pre_pos)
      CHECK(std::find(a.pre_neg.begin(), a.pre_neg.end(), x) == a.pre_neg.end());
  }
}

TEST_CASE("optimal swap plan matches the three step listing") {
  const auto task = ground_task(fixtures::move_domain(), fixtures::swap_problem());
  SearchConfig cfg;
  cfg.mode = SearchMode::Optimal;
  const Plan p = plan(task, cfg);
  REQUIRE(p.cost() == 3);
  CHECK(p.render() ==
        std::vector<std::string>{"1. move(obj1, A, C)", "2. move(obj2, B, A)", "3. move(obj1, C, B)"});
  CHECK(validate_plan(task, p).valid);
  CHECK(bfs_oracle(fixtures::move_domain(), fixtures::swap_problem()) == 3);
}

TEST_CASE("ff mode returns a valid swap plan") {
  const auto task = ground_task(fixtures::move_domain(), fixtures::swap_problem());
  SearchStats stats;
  const Plan p = plan(task, {}, &stats);
  CHECK(validate_plan(task, p).valid);
  CHECK(p.cost() == 3);
}

namespace {

// Move over element destinations with a stackable guard, enough for stacking.
const std::string kStackDomain = R"((define (domain stack)
  (:requirements :strips :typing :negative-preconditions)
  (:types position object - element)
  (:predicates (clear ?x - element) (on ?x - object ?y - element) (stackable ?x - object ?y - element))
  (:action move
    :parameters (?obj - object ?A - element ?B - element)
    :precondition (and (on ?obj ?A) (clear ?obj) (clear ?B) (stackable ?obj ?B) (not (on ?obj ?B)))
    :effect (and (on ?obj ?B) (clear ?A) (not (on ?obj ?A)) (not (clear ?B)))))
)";

const std::string kSussman = R"((define (problem sussman)
  (:domain stack)
  (:objects a b c - object P1 P2 P3 - position)
  (:init (on a P1) (on c a) (on b P2) (clear c) (clear b) (clear P3)
         (stackable a b) (stackable a c) (stackable b a) (stackable b c) (stackable c a) (stackable c b)
         (stackable a P1) (stackable a P2) (stackable a P3) (stackable b P1) (stackable b P2)
         (stackable b P3) (stackable c P1) (stackable c P2) (stackable c P3))
  (:goal (and (on a b) (on b c))))
)";

// Without deletes a negative condition is read through its complement atom.
bool relaxed_holds(const PlanningTask &task, const StateBits &s, const std::vector<int> &pos,
                   const std::vector<int> &neg) {
  for (int x : pos)
    if (!s.test(x))
      return false;
  for (int x : neg)
    if (!s.test(task.complement[x]))
      return false;
  return true;
}

// Delete-free optimal plan length by breadth-first search over relaxed
// states; independent of the heuristic's graph and extraction.
std::optional<int> relaxed_optimum(const PlanningTask &task, const StateBits &start) {
  std::vector<StateBits> frontier{start};
  std::unordered_set<StateBits, StateBitsHash> seen{start};
  for (int depth = 0; depth < 12; ++depth) {
    std::vector<StateBits> next;
    for (const auto &s : frontier) {
      if (relaxed_holds(task, s, task.goal_pos, task.goal_neg))
        return depth;
      for (const auto &a : task.actions) {
        if (!relaxed_holds(task, s, a.pre_pos, a.pre_neg))
          continue;
        StateBits t = s;
        for (int x : a.add)
          t.set(x);
        if (seen.insert(t).second)
          next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

PlanningTask swap_task() { return ground_task(fixtures::move_domain(), fixtures::swap_problem()); }

} // namespace

TEST_CASE("h_ff on the swap task") {
  const auto task = swap_task();
  const HeuristicValue h = h_ff(task, task.init);
  const auto hplus = relaxed_optimum(task, task.init);
  REQUIRE(hplus);
  CHECK(*hplus == 3);
  CHECK(h.value >= *hplus);
  CHECK_FALSE(h.helpful.empty());

  SUBCASE("the relaxed plan reaches the goal without deletes") {
    StateBits s = task.init;
    std::vector<int> pending = h.relaxed_plan;
    // Apply relaxed plan actions in any order that keeps them applicable.
    bool progress = true;
    while (!pending.empty() && progress) {
      progress = false;
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        const auto &a = task.actions[*it];
        if (relaxed_holds(task, s, a.pre_pos, a.pre_neg)) {
          for (int x : a.add)
            s.set(x);
          pending.erase(it);
          progress = true;
          break;
        }
      }
    }
    CHECK(pending.empty());
    CHECK(relaxed_holds(task, s, task.goal_pos, task.goal_neg));
  }
  SUBCASE("helpful actions are applicable in the state") {
    for (int i : h.helpful)
      CHECK(task.applicable(task.actions[i], task.init));
  }
}

TEST_CASE("h_ff is zero exactly on goal states") {
  const auto task = swap_task();
  const Plan p = plan(task, {SearchMode::Optimal});
  StateBits s = task.init;
  for (const auto &step : p.steps) {
    CHECK(h_ff(task, s).value > 0);
    s = task.successor(step, s);
  }
  CHECK(h_ff(task, s).value == 0);
}

TEST_CASE("h_ff is infinite when a goal atom has no achiever") {
  const auto d = fixtures::move_domain();
  const auto p = parse_problem(R"((define (problem p) (:domain blocks)
    (:objects obj1 - object A B - position)
    (:init (on obj1 A) (clear B))
    (:goal (clear obj1))))",
                               d);
  const auto task = ground_task(d, p);
  CHECK(h_ff(task, task.init).infinite());
  CHECK(code_of([&] { plan(task, {}); }) == ErrorCode::NoSolution);
  CHECK(code_of([&] { plan(task, {SearchMode::Optimal}); }) == ErrorCode::NoSolution);
  CHECK_FALSE(bfs_oracle(d, p).has_value());
}

TEST_CASE("Sussman configuration") {
  const auto d = parse_domain(kStackDomain);
  const auto p = parse_problem(kSussman, d);
  const auto task = ground_task(d, p);
  CHECK(bfs_oracle(d, p) == 3);
  const Plan opt = plan(task, {SearchMode::Optimal});
  CHECK(opt.cost() == 3);
  CHECK(validate_plan(task, opt).valid);
  const Plan ff = plan(task, {SearchMode::FF});
  CHECK(validate_plan(task, ff).valid);
  CHECK(ff.cost() <= 6);
}

TEST_CASE("grounding counts") {
  SUBCASE("zero-parameter action") {
    const auto d = parse_domain(R"((define (domain z)
      (:predicates (ready) (done))
      (:action finish :parameters () :precondition (ready) :effect (and (done) (not (ready))))))");
    const auto p = parse_problem(
        "(define (problem z1) (:domain z) (:objects) (:init (ready)) (:goal (done)))", d);
    const auto task = ground_task(d, p);
    CHECK(task.actions.size() == 1);
    CHECK(plan(task, {}).render() == std::vector<std::string>{"1. finish()"});
  }
  SUBCASE("element destinations") {
    auto text = fixtures::kMoveDomain;
    text.replace(text.find("?B - position"), 13, "?B - element");
    const auto d = parse_domain(text);
    const auto task = ground_task(d, fixtures::swap_problem());
    std::set<std::string> destinations;
    for (const auto &a : task.actions)
      destinations.insert(a.args[2]);
    CHECK(destinations.size() == 5);
    // Oracle: every (obj, A, B) with B != A, B any element.
    CHECK(task.actions.size() == 2 * 3 * 4);
  }
  SUBCASE("mismatched domain name") {
    auto p = fixtures::swap_problem();
    p.domain_name = "other";
    CHECK(code_of([&] { ground_task(fixtures::move_domain(), p); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("validate_plan") {
  const auto task = swap_task();
  const Plan p = plan(task, {SearchMode::Optimal});
  SUBCASE("swapping the first two steps fails at the first step") {
    Plan bad = p;
    std::swap(bad.steps[0], bad.steps[1]);
    const auto v = validate_plan(task, bad);
    CHECK_FALSE(v.valid);
    REQUIRE(v.failed_step);
    CHECK(*v.failed_step == 0);
    CHECK(v.diagnostic.find("clear(A)") != std::string::npos);
  }
  SUBCASE("empty plan only validates on a satisfied goal") {
    CHECK_FALSE(validate_plan(task, Plan{}).valid);
  }
}

TEST_CASE("goal already satisfied gives an empty plan") {
  const auto d = fixtures::move_domain();
  const auto p = parse_problem(R"((define (problem p) (:domain blocks)
    (:objects obj1 - object A B - position)
    (:init (on obj1 A) (clear B))
    (:goal (on obj1 A))))",
                               d);
  const auto task = ground_task(d, p);
  CHECK(plan(task, {}).cost() == 0);
  CHECK(plan(task, {SearchMode::Optimal}).cost() == 0);
  CHECK(validate_plan(task, Plan{}).valid);
  CHECK(h_ff(task, task.init).value == 0);
  CHECK(bfs_oracle(d, p) == 0);
}

TEST_CASE("resource limits are distinct from unsolvability") {
  const auto d = parse_domain(kStackDomain);
  const auto task = ground_task(d, parse_problem(kSussman, d));
  SearchConfig cfg;
  cfg.mode = SearchMode::Optimal;
  cfg.node_limit = 1;
  CHECK(code_of([&] { plan(task, cfg); }) == ErrorCode::ResourceLimit);

  std::atomic<bool> stop{true};
  SearchConfig stopped;
  stopped.stop = &stop;
  stopped.mode = SearchMode::Optimal;
  CHECK(code_of([&] { plan(task, stopped); }) == ErrorCode::ResourceLimit);

  CHECK(code_of([&] { bfs_oracle(d, parse_problem(kSussman, d), 2); }) == ErrorCode::TooLarge);
}

TEST_CASE("planning is deterministic") {
  const auto d = parse_domain(kStackDomain);
  const auto task = ground_task(d, parse_problem(kSussman, d));
  for (auto mode : {SearchMode::FF, SearchMode::Optimal})
    CHECK(plan(task, {mode}) == plan(task, {mode}));
}
