#include "irp/benchmark.hpp"

#include "irp/error.hpp"
#include "irp/json_io.hpp"

#include <chrono>
#include <cmath>

namespace irp::bench {

namespace {

constexpr double kTableX = 0.5;
constexpr double kLift = 0.15;

Vec3 dims_of(const TypeTag &type) {
  for (const auto &p : default_prototypes())
    if (p.type == type)
      return p.dims;
  throw Error(ErrorCode::UnknownType, "no prototype for '" + type.name + "'");
}

const PositionInstance &position(const std::string &id) {
  static const auto all = positions();
  for (const auto &p : all)
    if (p.id == id)
      return p;
  throw Error(ErrorCode::UnknownInstance, "no position " + id);
}

Pose at(const std::string &pos, double z, double dy = 0.0, Quat q = {}) {
  const auto &p = position(pos);
  return {{p.x, p.y + dy, z}, q};
}

// Claw turned to approach along +y.
const Quat kSideGrasp{std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0};

ScriptedKeyframe key(double t, Arm arm, Pose pose, Gripper g, std::string frame = {}) {
  return {t, arm, pose, g, std::move(frame)};
}

Atom on(const std::string &a, const std::string &b) { return {predicates::on, {a, b}}; }

} // namespace

std::vector<PositionInstance> positions() {
  return {{"A", kTableX, -0.225}, {"B", kTableX, -0.075}, {"C", kTableX, 0.075},
          {"D", kTableX, 0.225}};
}

ObjectInstance object_at(const std::string &id, const TypeTag &type, const std::string &pos) {
  const auto &p = position(pos);
  return {id, {p.x, p.y, 0.0}, dims_of(type), type};
}

ObjectInstance object_on(const std::string &id, const TypeTag &type, const ObjectInstance &below) {
  return {id, below.top(), dims_of(type), type};
}

Scene demo_scene(const std::string &id, const TypeTag &type) {
  Scene s;
  s.positions = positions();
  s.objects.push_back(object_at(id, type, "A"));
  return s;
}

DemoScript claw_top_demo() {
  const Arm arm = Arm::LeftClaw;
  const double grasp = dims_of(types::cube).z / 2;
  return {"claw_top",
          {key(0.0, arm, at("A", kLift), Gripper::Open),
           key(1.5, arm, at("A", grasp), Gripper::Close),
           key(3.0, arm, at("A", kLift), Gripper::Close),
           key(5.0, arm, at("B", kLift), Gripper::Close),
           key(6.5, arm, at("B", grasp + 0.005), Gripper::Open),
           key(8.0, arm, at("B", kLift), Gripper::Open, "B")}};
}

DemoScript claw_side_demo() {
  const Arm arm = Arm::LeftClaw;
  const double grasp = dims_of(types::cube).z / 2;
  return {"claw_side",
          {key(0.0, arm, at("A", grasp, -0.10, kSideGrasp), Gripper::Open, "cube"),
           key(1.5, arm, at("A", grasp, 0.0, kSideGrasp), Gripper::Close),
           key(3.0, arm, at("A", kLift, 0.0, kSideGrasp), Gripper::Close),
           key(5.0, arm, at("B", kLift, 0.0, kSideGrasp), Gripper::Close),
           key(6.5, arm, at("B", grasp + 0.005, 0.0, kSideGrasp), Gripper::Open),
           key(8.0, arm, at("B", grasp + 0.005, -0.10, kSideGrasp), Gripper::Open, "B")}};
}

DemoScript suction_top_demo() {
  const Arm arm = Arm::RightSuction;
  const double top = dims_of(types::base).z;
  return {"suction_top",
          {key(0.0, arm, at("A", top + 0.10), Gripper::Open),
           key(1.5, arm, at("A", top), Gripper::Close),
           key(3.0, arm, at("A", kLift), Gripper::Close),
           key(5.0, arm, at("B", kLift), Gripper::Close),
           key(6.5, arm, at("B", top + 0.005), Gripper::Open),
           key(8.0, arm, at("B", kLift), Gripper::Open, "B")}};
}

namespace {

void teach(Session &s, const std::string &name, const DemoScript &script, const Scene &scene) {
  const DemoResult demo = run_demo_script(script, scene, s.config, s.domain.vocab);
  teach_action(s, name, demo);
}

void edit(Session &s, const std::string &name, const ActionEdit &e) { modify_action(s, name, e); }

Literal pre(const std::string &pred, std::vector<std::string> args) {
  return Literal::pos({pred, std::move(args)});
}

// Picks from and places onto any element, guarded by the stacking rules.
void generalise_placement(Session &s, const std::string &name) {
  edit(s, name, edits::SetParamType{"?A", types::element});
  edit(s, name, edits::SetParamType{"?B", types::element});
  edit(s, name, edits::AddPre{pre(predicates::stackable, {"?obj", "?B"})});
}

} // namespace

void prepare_domain(Session &s, int task) {
  auto &actions = s.domain.actions;
  if (!actions.count("claw_top")) {
    teach(s, "claw_top", claw_top_demo(), demo_scene("cube", types::cube));
    edit(s, "claw_top", edits::AddPre{pre(predicates::clear, {"?obj"})});
    generalise_placement(s, "claw_top");
  }
  if (task >= 4 && !actions.count("claw_side")) {
    // No clear(?obj): the side grasp lifts whatever is stacked on the object.
    teach(s, "claw_side", claw_side_demo(), demo_scene("cube", types::cube));
  }
  if (task >= 5 && !actions.count("suction_top")) {
    teach(s, "suction_top", suction_top_demo(), demo_scene("base", types::base));
    edit(s, "suction_top", edits::SetParamType{"?obj", types::object});
    edit(s, "suction_top", edits::AddPre{pre(predicates::clear, {"?obj"})});
    edit(s, "suction_top", edits::AddPre{pre(predicates::flat, {"?obj"})});
    generalise_placement(s, "suction_top");
    edit(s, "claw_top", edits::SetParamType{"?obj", types::object});
    edit(s, "claw_top", edits::AddPre{pre(predicates::thin, {"?obj"})});
  }
}

Session taught_session() {
  Session s;
  prepare_domain(s, 6);
  return s;
}

std::string title(int task) {
  switch (task) {
  case 1:
    return "Build tower with 3 cubes";
  case 2:
    return "Build tower with 4 cubes";
  case 3:
    return "Rebuild the 4-cube tower on a different position";
  case 4:
    return "Build tower and move it without disassembly";
  case 5:
    return "Build house with base, cube and roof";
  case 6:
    return "Rebuild the house on a different position";
  }
  throw Error(ErrorCode::InvalidArgument, "benchmark tasks are numbered 1 to 6");
}

size_t Report::plan_length() const {
  size_t n = 0;
  for (const auto &p : phases)
    n += p.plan.size();
  return n;
}

std::optional<int> Report::optimal_length() const {
  int n = 0;
  for (const auto &p : phases) {
    if (!p.optimal_length)
      return std::nullopt;
    n += *p.optimal_length;
  }
  return n;
}

bool Report::goal_reached() const {
  if (phases.empty())
    return false;
  for (const auto &p : phases)
    if (!p.goal_reached)
      return false;
  return true;
}

namespace {

struct PhaseSpec {
  std::string problem;
  // Empty: continue from the mental model.
  std::optional<Scene> scene;
  std::set<Literal> goal;
};

Scene scene_with(std::vector<ObjectInstance> objects) {
  Scene s;
  s.positions = positions();
  s.objects = std::move(objects);
  return s;
}

std::set<Literal> goal_of(std::initializer_list<Atom> atoms) {
  std::set<Literal> out;
  for (const auto &a : atoms)
    out.insert(Literal::pos(a));
  return out;
}

std::vector<PhaseSpec> phases_of(int task) {
  const auto &cube = types::cube;
  switch (task) {
  case 1:
    return {{"task1",
             scene_with({object_at("c1", cube, "A"), object_at("c2", cube, "B"),
                         object_at("c3", cube, "C")}),
             goal_of({on("c2", "c1"), on("c3", "c2")})}};
  case 2:
    return {{"task2",
             scene_with({object_at("c1", cube, "A"), object_at("c2", cube, "B"),
                         object_at("c3", cube, "C"), object_at("c4", cube, "D")}),
             goal_of({on("c2", "c1"), on("c3", "c2"), on("c4", "c3")})}};
  case 3:
    return {{"task3", std::nullopt,
             goal_of({on("c1", "D"), on("c2", "c1"), on("c3", "c2"), on("c4", "c3")})}};
  case 4:
    return {{"task4_build",
             scene_with({object_at("c1", cube, "A"), object_at("c2", cube, "B"),
                         object_at("c3", cube, "C")}),
             goal_of({on("c1", "A"), on("c2", "c1"), on("c3", "c2")})},
            {"task4_move", std::nullopt, goal_of({on("c1", "D"), on("c2", "c1"), on("c3", "c2")})}};
  case 5:
    return {{"task5",
             scene_with({object_at("b1", types::base, "A"), object_at("c1", cube, "B"),
                         object_at("r1", types::roof, "C")}),
             goal_of({on("b1", "D"), on("c1", "b1"), on("r1", "c1")})}};
  case 6:
    return {{"task6", std::nullopt, goal_of({on("b1", "A"), on("c1", "b1"), on("r1", "c1")})}};
  }
  throw Error(ErrorCode::InvalidArgument, "benchmark tasks are numbered 1 to 6");
}

} // namespace

Report run_task(Session &s, int task, const Options &options) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.task = task;
  r.title = title(task);
  r.stage = "teach";
  try {
    prepare_domain(s, task);
    for (const auto &[n, a] : s.domain.actions)
      r.actions.push_back(n);
    for (const auto &spec : phases_of(task)) {
      PhaseReport ph;
      ph.problem = spec.problem;
      r.stage = "problem " + spec.problem;
      if (spec.scene)
        create_problem_from_scene(s, spec.problem, *spec.scene);
      else
        create_problem_from_model(s, spec.problem);
      set_goal(s, spec.problem, spec.goal);

      r.stage = "solve " + spec.problem;
      SearchConfig cfg;
      cfg.mode = options.mode;
      const PlanRecord &rec = solve(s, spec.problem, cfg);
      ph.plan = rec.plan.render();
      for (const auto &step : rec.plan.steps)
        ph.used_actions.push_back(step.name);
      const Problem &problem = s.problems.at(spec.problem);
      ph.optimal_length = bfs_oracle(s.domain.to_pddl(), problem.to_pddl(s.domain.name));

      r.stage = "execute " + spec.problem;
      const ExecutionLog log = execute_all(s, rec.id);
      ph.transcript = log.transcript();
      for (const auto &e : log.entries)
        if (e.outcome != StepOutcome::Ok)
          throw Error(ErrorCode::PreconditionUnsatisfied, "step " + e.action + " " +
                                                              to_string(e.outcome) + ": " +
                                                              e.message);

      r.stage = "check " + spec.problem;
      const WorldState seen = perceive(s.scene, s.config, s.domain.vocab);
      ph.goal_reached = satisfies(seen, spec.goal);
      ph.model_matches_perception = s.model && s.model->atoms == seen;
      r.phases.push_back(std::move(ph));
    }
    r.stage = "done";
    r.ok = r.goal_reached();
    for (const auto &p : r.phases)
      r.ok = r.ok && p.model_matches_perception;
  } catch (const std::exception &e) {
    r.ok = false;
    r.error = e.what();
  }
  r.final_scene = s.scene;
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

Report run_benchmark(int task, const Options &options) {
  title(task);
  Session s;
  if (task == 3 || task == 6) {
    const Report prior = run_task(s, task - 1, options);
    if (!prior.ok) {
      Report r = prior;
      r.task = task;
      r.title = title(task);
      r.stage = "prerequisite task " + std::to_string(task - 1) + ": " + prior.stage;
      return r;
    }
  }
  return run_task(s, task, options);
}

std::vector<Report> run_suite(const Options &options) {
  Session s;
  std::vector<Report> out;
  for (int t = 1; t <= 6; ++t)
    out.push_back(run_task(s, t, options));
  return out;
}

nlohmann::json to_json(const Report &r) {
  json phases = json::array();
  for (const auto &p : r.phases)
    phases.push_back({{"problem", p.problem},
                      {"plan", p.plan},
                      {"used_actions", p.used_actions},
                      {"optimal_length", p.optimal_length ? json(*p.optimal_length) : json()},
                      {"goal_reached", p.goal_reached},
                      {"model_matches_perception", p.model_matches_perception},
                      {"transcript", p.transcript}});
  const auto opt = r.optimal_length();
  return {{"task", r.task},
          {"title", r.title},
          {"ok", r.ok},
          {"stage", r.stage},
          {"error", r.error},
          {"actions", r.actions},
          {"phases", phases},
          {"plan_length", r.plan_length()},
          {"optimal_length", opt ? json(*opt) : json()},
          {"goal_reached", r.goal_reached()},
          {"final_scene", r.final_scene},
          {"runtime_ms", r.runtime_ms}};
}

} // namespace irp::bench
