#include "irp/benchmark.hpp"
#include "irp/json_io.hpp"
#include "irp/session.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace irp;
using testutil::at;
using testutil::code_of;

namespace {

Scene swap_scene() {
  Scene s;
  auto all = bench::positions();
  s.positions.assign(all.begin(), all.begin() + 3);
  s.objects.push_back(bench::object_at("obj1", types::cube, "A"));
  s.objects.push_back(bench::object_at("obj2", types::cube, "B"));
  return s;
}

Session move_session() {
  Session s;
  const auto demo = run_demo_script(bench::claw_top_demo(), bench::demo_scene("cube", types::cube),
                                    s.config, s.domain.vocab);
  teach_action(s, "move", demo);
  return s;
}

Session swap_session() {
  Session s = move_session();
  create_problem_from_scene(s, "swap", swap_scene());
  set_goal(s, "swap", {Literal::pos(at("on", {"obj1", "B"})), Literal::pos(at("on", {"obj2", "A"}))});
  return s;
}

bool has_hint(const DebugReport &r, char kind) {
  for (const auto &h : r.hints)
    if (h.kind == kind)
      return true;
  return false;
}

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("irp_test_" + name);
}

} // namespace

TEST_CASE("problems need at least one action") {
  Session s;
  CHECK(code_of([&] { create_problem_from_scene(s, "p", swap_scene()); }) ==
        ErrorCode::NoActionsDefined);
}

TEST_CASE("problem from the swap scene") {
  Session s = move_session();
  const Problem &p = create_problem_from_scene(s, "swap", swap_scene());
  CHECK(p.init.holds(at("on", {"obj1", "A"})));
  CHECK(p.init.holds(at("on", {"obj2", "B"})));
  CHECK(p.init.holds(at("clear", {"C"})));
  CHECK_FALSE(p.init.holds(at("clear", {"A"})));

  SUBCASE("re-detecting under the same name replaces the problem") {
    set_goal(s, "swap", {Literal::pos(at("on", {"obj1", "C"}))});
    const Problem &again = create_problem_from_scene(s, "swap", swap_scene());
    CHECK(again.goal.empty());
    CHECK(s.problems.size() == 1);
  }

  SUBCASE("a type correction re-derives static atoms") {
    StateCorrections c;
    c.types = {{"obj2", types::roof}};
    const Problem &fixed = correct_problem(s, "swap", c);
    CHECK(fixed.init.instances.at("obj2") == types::roof);
    CHECK_FALSE(fixed.init.holds(at("flat", {"obj2"})));
    CHECK(fixed.init.holds(at("thin", {"obj2"})));
  }
  SUBCASE("goals are type checked") {
    CHECK_THROWS_AS(set_goal(s, "swap", {Literal::pos(at("on", {"A", "obj1"}))}), Error);
    CHECK_THROWS_AS(set_goal(s, "swap", {Literal::pos(at("on", {"ghost", "A"}))}), Error);
  }
}

TEST_CASE("solving the swap problem") {
  Session s = swap_session();
  SearchConfig cfg;
  cfg.mode = SearchMode::Optimal;
  const PlanRecord &rec = solve(s, "swap", cfg);
  CHECK(rec.plan.render() == std::vector<std::string>{"1. move(obj1, A, C)", "2. move(obj2, B, A)",
                                                      "3. move(obj1, C, B)"});
  CHECK(s.plans.count(rec.id));
  CHECK(rec.id == 1);
  CHECK(s.next_plan_id == 2);

  SUBCASE("persisted PDDL grounds to the same task") {
    const PddlDomain d = parse_domain(rec.domain_pddl);
    const PddlProblem p = parse_problem(rec.problem_pddl, d);
    const PddlDomain live = s.domain.to_pddl();
    CHECK(ground_task(d, p).actions ==
          ground_task(live, s.problems.at("swap").to_pddl(live.name)).actions);
  }
  SUBCASE("executing the stored plan reaches the goal") {
    const ExecutionLog log = execute_all(s, rec.id);
    CHECK(log.entries.size() == 3);
    CHECK(s.execution->finished);
    const WorldState w = perceive(s.scene, s.config, s.domain.vocab);
    CHECK(satisfies(w, s.problems.at("swap").goal));
    CHECK(s.model->atoms == w);
  }
  SUBCASE("stepwise execution") {
    const LogEntry first = execute_next_step(s, rec.id);
    CHECK(first.outcome == StepOutcome::Ok);
    CHECK(s.execution->next_step == 1);
    CHECK(s.model->atoms.holds(at("on", {"obj1", "C"})));
  }
}

TEST_CASE("solve errors") {
  SUBCASE("empty goal") {
    Session s = move_session();
    create_problem_from_scene(s, "p", swap_scene());
    CHECK(code_of([&] { solve(s, "p", {}); }) == ErrorCode::EmptyGoal);
  }
  SUBCASE("goal already true") {
    Session s = move_session();
    create_problem_from_scene(s, "p", swap_scene());
    set_goal(s, "p", {Literal::pos(at("on", {"obj1", "A"}))});
    CHECK(solve(s, "p", {}).plan.cost() == 0);
  }
  SUBCASE("cube on a roof cannot be built") {
    Session s = bench::taught_session();
    Scene scene;
    scene.positions = bench::positions();
    scene.objects.push_back(bench::object_at("r1", types::roof, "A"));
    scene.objects.push_back(bench::object_at("c1", types::cube, "B"));
    create_problem_from_scene(s, "bad", scene);
    set_goal(s, "bad", {Literal::pos(at("on", {"c1", "r1"}))});
    try {
      solve(s, "bad", {});
      FAIL("expected NoSolution");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::NoSolution);
      CHECK(std::string(e.what()).find("debug") != std::string::npos);
    }
    const PddlDomain d = s.domain.to_pddl();
    CHECK_FALSE(bfs_oracle(d, s.problems.at("bad").to_pddl(d.name)).has_value());
    CHECK(has_hint(debug_summary(s, "bad"), 'a'));
  }
  SUBCASE("unknown problem") {
    Session s = move_session();
    CHECK(code_of([&] { solve(s, "nope", {}); }) == ErrorCode::NotFound);
  }
}

TEST_CASE("debug summary") {
  SUBCASE("consistent solvable problem has no hints") {
    Session s = swap_session();
    const auto r = debug_summary(s, "swap");
    CHECK(r.hints.empty());
    CHECK(r.actions.size() == 1);
    CHECK_FALSE(r.init.empty());
    CHECK(r.goal == std::vector<std::string>{"obj1 is on B", "obj2 is on A"});
  }
  SUBCASE("(a) object on object with position-only placement") {
    Session s = move_session();
    Scene scene = swap_scene();
    create_problem_from_scene(s, "p", scene);
    set_goal(s, "p", {Literal::pos(at("on", {"obj1", "obj2"}))});
    const auto r = debug_summary(s, "p");
    REQUIRE(has_hint(r, 'a'));
    for (const auto &h : r.hints)
      if (h.kind == 'a') {
        CHECK(h.text.find(kGoalHint) == 0);
        CHECK(h.text.find("on(obj1, obj2)") != std::string::npos);
      }
    CHECK(std::string(kGoalHint) == "make sure the action effects can achieve the goal states");
  }
  SUBCASE("(b) thin objects missing from the scene") {
    Session s = move_session();
    modify_action(s, "move", edits::SetParamType{"?obj", types::object});
    modify_action(s, "move", edits::AddPre{Literal::pos(at("thin", {"?obj"}))});
    Scene scene;
    scene.positions = bench::positions();
    scene.objects.push_back(bench::object_at("b1", types::base, "A"));
    create_problem_from_scene(s, "p", scene);
    set_goal(s, "p", {Literal::pos(at("on", {"b1", "B"}))});
    CHECK(has_hint(debug_summary(s, "p"), 'b'));
  }
  SUBCASE("(c) inconsistent initial state") {
    Session s = swap_session();
    s.problems.at("swap").init.atoms.insert(at("clear", {"A"}));
    CHECK(has_hint(debug_summary(s, "swap"), 'c'));
  }
  SUBCASE("(d) goal that no longer fits the predicates") {
    Session s = swap_session();
    s.problems.at("swap").goal.insert(Literal::pos(at("on", {"A", "obj1"})));
    CHECK(has_hint(debug_summary(s, "swap"), 'd'));
  }
}

TEST_CASE("action management") {
  Session s = move_session();
  copy_action(s, "move", "move_copy");
  CHECK(s.domain.actions.at("move_copy").low_level == s.domain.actions.at("move").low_level);
  CHECK(code_of([&] { copy_action(s, "move", "move_copy"); }) == ErrorCode::DuplicateName);
  modify_action(s, "move_copy", edits::AddPre{Literal::pos(at("thin", {"?obj"}))});
  CHECK(s.domain.actions.at("move").pre.size() == 4);
  modify_action(s, "move_copy", edits::Rename{"carry"});
  CHECK(s.domain.actions.count("carry"));
  CHECK_FALSE(s.domain.actions.count("move_copy"));
  CHECK(code_of([&] { modify_action(s, "ghost", edits::Rename{"x"}); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { add_action(s, s.domain.actions.at("move")); }) == ErrorCode::DuplicateName);
}

TEST_CASE("persistence") {
  Session s = swap_session();
  const PlanRecord rec = solve(s, "swap", {SearchMode::Optimal});
  execute_next_step(s, rec.id);

  SUBCASE("save then load gives an equal session") {
    const auto path = temp_file("roundtrip.json");
    save_session(s, path.string());
    const Session back = load_session(path.string());
    CHECK(back == s);
    std::filesystem::remove(path);
  }
  SUBCASE("future schema version") {
    json j = session_to_json(s);
    j["schema_version"] = kSchemaVersion + 1;
    CHECK(code_of([&] { session_from_json(j); }) == ErrorCode::SchemaVersionMismatch);
  }
  SUBCASE("truncated file reports the byte offset") {
    const std::string text = session_to_json(s).dump();
    const auto path = temp_file("truncated.json");
    {
      std::ofstream out(path);
      out << text.substr(0, text.size() / 2);
    }
    try {
      load_session(path.string());
      FAIL("expected CorruptFile");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::CorruptFile);
      CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    std::filesystem::remove(path);
  }
  SUBCASE("structurally wrong document") {
    json j = session_to_json(s);
    j["domain"] = 42;
    CHECK(code_of([&] { session_from_json(j); }) == ErrorCode::CorruptFile);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_session(temp_file("does_not_exist.json").string()), Error);
  }
}
