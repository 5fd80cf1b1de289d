#include "irp/session.hpp"

#include "irp/error.hpp"
#include "irp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace irp {

const char *const kGoalHint = "make sure the action effects can achieve the goal states";

PddlDomain Domain::to_pddl() const {
  PddlDomain d{name, vocab.types, vocab.predicates, {}};
  for (const auto &[n, a] : actions)
    d.actions.push_back(pddl_projection(a));
  return d;
}

PddlProblem Problem::to_pddl(const std::string &domain_name) const {
  return {name, domain_name, init.instances, init.atoms, goal};
}

namespace {

Problem &find_problem(Session &s, const std::string &name) {
  auto it = s.problems.find(name);
  if (it == s.problems.end())
    throw Error(ErrorCode::NotFound, "no problem named '" + name + "'");
  return it->second;
}

const Problem &find_problem(const Session &s, const std::string &name) {
  return find_problem(const_cast<Session &>(s), name);
}

void log_event(Session &s, std::string text) { s.events.push_back(std::move(text)); }

void check_goal(const Vocabulary &vocab, const std::set<Literal> &goal,
                const InstanceTypes &instances) {
  for (const auto &l : goal)
    vocab.check_ground(l.atom, instances);
}

} // namespace

const HighLevelAction &teach_action(Session &session, const std::string &name,
                                    const DemoResult &demo) {
  if (session.domain.actions.count(name))
    throw Error(ErrorCode::DuplicateName, "an action named '" + name + "' already exists");
  LowLevelAction motion = demo.action;
  motion.name = name;
  const GroundConditions g = infer_ground_conditions(demo.o1, demo.o2);
  HighLevelAction a = lift_action(name, g, demo.o1.instances, &motion);
  add_action(session, a, motion);
  return session.domain.actions.at(name);
}

void add_action(Session &session, const HighLevelAction &action,
                const std::optional<LowLevelAction> &motion) {
  if (action.name.empty())
    throw Error(ErrorCode::InvalidArgument, "action name must not be empty");
  if (session.domain.actions.count(action.name))
    throw Error(ErrorCode::DuplicateName, "an action named '" + action.name + "' already exists");
  validate_action(session.domain.vocab, action);
  HighLevelAction a = action;
  if (motion) {
    motion->validate();
    a.low_level = motion->name;
    session.domain.low_level[motion->name] = *motion;
  }
  session.domain.actions.emplace(a.name, std::move(a));
  log_event(session, "action " + action.name + " added");
}

const HighLevelAction &modify_action(Session &session, const std::string &name,
                                     const ActionEdit &edit) {
  auto it = session.domain.actions.find(name);
  if (it == session.domain.actions.end())
    throw Error(ErrorCode::NotFound, "no action named '" + name + "'");
  HighLevelAction edited = edit_action(session.domain.vocab, it->second, edit);
  if (edited.name != name) {
    if (session.domain.actions.count(edited.name))
      throw Error(ErrorCode::DuplicateName,
                  "an action named '" + edited.name + "' already exists");
    session.domain.actions.erase(it);
    const std::string new_name = edited.name;
    session.domain.actions.emplace(new_name, std::move(edited));
    log_event(session, "action " + name + " renamed to " + new_name);
    return session.domain.actions.at(new_name);
  }
  it->second = std::move(edited);
  log_event(session, "action " + name + " modified");
  return it->second;
}

const HighLevelAction &copy_action(Session &session, const std::string &name,
                                   const std::string &new_name) {
  auto it = session.domain.actions.find(name);
  if (it == session.domain.actions.end())
    throw Error(ErrorCode::NotFound, "no action named '" + name + "'");
  std::set<std::string> names;
  for (const auto &[n, a] : session.domain.actions)
    names.insert(n);
  HighLevelAction copy = irp::copy_action(it->second, new_name, names);
  session.domain.actions.emplace(new_name, std::move(copy));
  log_event(session, "action " + name + " copied to " + new_name);
  return session.domain.actions.at(new_name);
}

Problem &create_problem_from_scene(Session &session, const std::string &name, const Scene &scene,
                                   const StateCorrections &corrections, PerceptionMode mode) {
  if (session.domain.actions.empty())
    throw Error(ErrorCode::NoActionsDefined,
                "teach at least one action before creating a problem");
  if (name.empty())
    throw Error(ErrorCode::InvalidArgument, "problem name must not be empty");
  scene.validate(session.domain.vocab.types, session.config);
  Problem p;
  p.name = name;
  p.scene = scene;
  p.mode = mode;
  p.corrections = corrections;
  p.init = perceive_corrected(scene, session.config, session.domain.vocab, mode, corrections);
  session.problems[name] = std::move(p);
  session.scene = scene;
  session.model.reset();
  log_event(session, "problem " + name + " created from the scene");
  return session.problems.at(name);
}

Problem &create_problem_from_model(Session &session, const std::string &name) {
  if (session.domain.actions.empty())
    throw Error(ErrorCode::NoActionsDefined,
                "teach at least one action before creating a problem");
  if (!session.model)
    throw Error(ErrorCode::NotFound, "there is no mental model yet; create a problem from the scene");
  Problem p;
  p.name = name;
  p.scene = session.scene;
  p.mode = session.model->mode;
  p.init = session.model->atoms;
  p.from_model = true;
  session.problems[name] = std::move(p);
  log_event(session, "problem " + name + " created from the mental model");
  return session.problems.at(name);
}

Problem &correct_problem(Session &session, const std::string &name,
                         const StateCorrections &corrections) {
  Problem &p = find_problem(session, name);
  WorldState init =
      perceive_corrected(p.scene, session.config, session.domain.vocab, p.mode, corrections);
  p.corrections = corrections;
  p.init = std::move(init);
  p.from_model = false;
  log_event(session, "problem " + name + " corrected");
  return p;
}

Problem &set_goal(Session &session, const std::string &name, const std::set<Literal> &goal) {
  Problem &p = find_problem(session, name);
  check_goal(session.domain.vocab, goal, p.init.instances);
  p.goal = goal;
  log_event(session, "goal of " + name + " set");
  return p;
}

const PlanRecord &solve(Session &session, const std::string &name, const SearchConfig &config) {
  const Problem &p = find_problem(session, name);
  if (p.goal.empty())
    throw Error(ErrorCode::EmptyGoal, "problem '" + name + "' has no goal");
  if (session.domain.actions.empty())
    throw Error(ErrorCode::NoActionsDefined, "the domain has no actions");
  const PddlDomain pd = session.domain.to_pddl();
  const PddlProblem pp = p.to_pddl(pd.name);
  PlanRecord rec;
  rec.problem = name;
  rec.mode = config.mode;
  rec.domain_pddl = emit_domain(pd);
  rec.problem_pddl = emit_problem(pp);
  const PlanningTask task = ground_task(pd, pp);
  Plan found;
  try {
    found = plan(task, config);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::NoSolution)
      throw Error(e.code(), e.detail() + "; open the debug summary of '" + name + "' for hints");
    throw;
  }
  const PlanValidation v = validate_plan(task, found);
  if (!v.valid)
    throw std::logic_error("planner returned an invalid plan: " + v.diagnostic);
  for (const auto &s : found.steps)
    rec.plan.steps.push_back({s.name, s.args, {}, {}, {}, {}});
  rec.id = session.next_plan_id++;
  log_event(session, "plan " + std::to_string(rec.id) + " for " + name + " has " +
                         std::to_string(rec.plan.cost()) + " step(s)");
  return session.plans[rec.id] = std::move(rec);
}

LogEntry execute_next_step(Session &session, int plan_id, const ConfirmFn &confirm,
                           std::chrono::milliseconds watchdog) {
  auto pit = session.plans.find(plan_id);
  if (pit == session.plans.end())
    throw Error(ErrorCode::NotFound, "no plan with id " + std::to_string(plan_id));
  const PlanRecord &rec = pit->second;
  const Problem &problem = find_problem(session, rec.problem);

  if (session.execution && session.execution->plan_id != plan_id && !session.execution->finished)
    throw Error(ErrorCode::StaleSnapshot, "plan " + std::to_string(session.execution->plan_id) +
                                              " is still executing");
  if (!session.execution || session.execution->plan_id != plan_id) {
    if (!problem.from_model || !session.model)
      session.model = init_mental_model(problem.scene, session.config, session.domain.vocab,
                                        problem.mode, problem.corrections);
    if (!problem.from_model)
      session.scene = problem.scene;
    session.execution = ExecutionState{plan_id, 0, {}, false};
  }
  ExecutionState &ex = *session.execution;
  if (ex.finished || ex.next_step >= rec.plan.steps.size())
    throw Error(ErrorCode::InvalidArgument,
                "plan " + std::to_string(plan_id) + " has no remaining steps");

  ExecutionContext ctx{session.domain.vocab, session.config, session.domain.actions,
                       session.domain.low_level, watchdog};
  StepResult r =
      execute_plan_step(*session.model, session.scene, rec.plan.steps[ex.next_step], ctx, confirm);
  session.scene = std::move(r.scene);
  session.model = std::move(r.model);
  ex.log.append(r.entry);
  ++ex.next_step;
  if (r.entry.outcome != StepOutcome::Ok || ex.next_step == rec.plan.steps.size()) {
    ex.finished = true;
    session.logs.push_back(ex.log);
  }
  log_event(session, "step " + std::to_string(ex.next_step) + " of plan " +
                         std::to_string(plan_id) + ": " + to_string(r.entry.outcome));
  return r.entry;
}

ExecutionLog execute_all(Session &session, int plan_id, const ConfirmFn &confirm) {
  auto pit = session.plans.find(plan_id);
  if (pit == session.plans.end())
    throw Error(ErrorCode::NotFound, "no plan with id " + std::to_string(plan_id));
  if (pit->second.plan.steps.empty())
    return {};
  while (true) {
    execute_next_step(session, plan_id, confirm);
    if (session.execution->finished)
      return session.execution->log;
  }
}

namespace {

std::set<std::string> changed_predicates(const Domain &d, bool adds, bool deletes) {
  std::set<std::string> out;
  for (const auto &[n, a] : d.actions) {
    if (adds)
      for (const auto &e : a.eff_plus)
        out.insert(e.predicate);
    if (deletes)
      for (const auto &e : a.eff_minus)
        out.insert(e.predicate);
  }
  return out;
}

// Could some instance of `action` put `target` into the wanted truth value?
// Static preconditions whose arguments are fixed by the match must hold in
// the initial state.
bool can_achieve(const Vocabulary &vocab, const HighLevelAction &action, const Atom &target,
                 bool make_true, const WorldState &init, const std::set<std::string> &fluent) {
  const auto &effects = make_true ? action.eff_plus : action.eff_minus;
  for (const auto &e : effects) {
    if (e.predicate != target.predicate || e.args.size() != target.args.size())
      continue;
    std::map<std::string, std::string> sub;
    bool ok = true;
    for (size_t i = 0; ok && i < e.args.size(); ++i) {
      const std::string &v = e.args[i];
      const std::string &id = target.args[i];
      if (!is_variable(v)) {
        ok = v == id;
        continue;
      }
      const Parameter *p = action.param(v);
      auto t = init.instances.find(id);
      if (!p || t == init.instances.end() || !vocab.types.is_subtype(t->second, p->type)) {
        ok = false;
        continue;
      }
      auto [it, fresh] = sub.emplace(v, id);
      ok = fresh || it->second == id;
    }
    if (!ok)
      continue;
    for (const auto &l : action.pre) {
      if (fluent.count(l.atom.predicate))
        continue;
      Atom g{l.atom.predicate, {}};
      bool bound = true;
      for (const auto &arg : l.atom.args) {
        if (!is_variable(arg)) {
          g.args.push_back(arg);
          continue;
        }
        auto it = sub.find(arg);
        if (it == sub.end()) {
          bound = false;
          break;
        }
        g.args.push_back(it->second);
      }
      if (bound && init.holds(g) != l.positive()) {
        ok = false;
        break;
      }
    }
    if (ok)
      return true;
  }
  return false;
}

} // namespace

DebugReport debug_summary(const Session &session, const std::string &name,
                          const std::string &last_failure) {
  const Problem &p = find_problem(session, name);
  const Domain &d = session.domain;
  DebugReport r;
  r.last_failure = last_failure;
  for (const auto &[n, a] : d.actions) {
    ActionSummary s{n, {}, describe(a)};
    for (const auto &param : a.params)
      s.params.push_back(param.name.substr(1) + " - " + param.type.name);
    r.actions.push_back(std::move(s));
  }
  for (const auto &a : p.init.atoms)
    r.init.push_back(to_english(a));
  for (const auto &l : p.goal)
    r.goal.push_back(to_english(l));

  const auto fluent = changed_predicates(d, true, true);
  for (const auto &l : p.goal) {
    if (p.init.holds(l.atom) == l.positive())
      continue;
    bool achievable = false;
    for (const auto &[n, a] : d.actions)
      achievable |= can_achieve(d.vocab, a, l.atom, l.positive(), p.init, fluent);
    if (!achievable)
      r.hints.push_back({'a', std::string(kGoalHint) + ": no action can make " + l.atom.str() +
                                  (l.positive() ? " true" : " false")});
  }

  const auto added = changed_predicates(d, true, false);
  std::set<std::string> in_init;
  for (const auto &a : p.init.atoms)
    in_init.insert(a.predicate);
  for (const auto &[n, a] : d.actions)
    for (const auto &l : a.pre)
      if (l.positive() && !added.count(l.atom.predicate) && !in_init.count(l.atom.predicate))
        r.hints.push_back({'b', "action '" + n + "' requires " + to_english(l) +
                                    ", but neither an action nor the initial state provides '" +
                                    l.atom.predicate + "'"});

  for (const auto &issue : p.init.coupling_issues(d.vocab))
    r.hints.push_back({'c', "the initial state is inconsistent: " + issue});

  for (const auto &l : p.goal) {
    try {
      d.vocab.check_ground(l.atom, p.init.instances);
    } catch (const Error &e) {
      r.hints.push_back({'d', "goal " + l.str() + " does not fit the predicate: " + e.detail()});
    }
  }
  return r;
}

void to_json(json &j, const DebugReport &r) {
  json actions = json::array();
  for (const auto &a : r.actions) {
    json rows = json::array();
    for (const auto &c : a.conditions)
      rows.push_back({{"section", c.section}, {"literal", c.literal.str()}, {"english", c.english}});
    actions.push_back({{"name", a.name}, {"params", a.params}, {"conditions", rows}});
  }
  json hints = json::array();
  for (const auto &h : r.hints)
    hints.push_back({{"kind", std::string(1, h.kind)}, {"text", h.text}});
  j = {{"actions", actions}, {"init", r.init},   {"goal", r.goal},
       {"hints", hints},     {"last_failure", r.last_failure}};
}

void to_json(json &j, const PlanRecord &r) {
  j = {{"id", r.id},
       {"problem", r.problem},
       {"mode", r.mode == SearchMode::Optimal ? "optimal" : "ff"},
       {"plan", r.plan},
       {"rendered", r.plan.render()},
       {"domain_pddl", r.domain_pddl},
       {"problem_pddl", r.problem_pddl}};
}

namespace {

void from_json(const json &j, PlanRecord &r) {
  r.id = j.at("id").get<int>();
  r.problem = j.at("problem").get<std::string>();
  r.mode = j.at("mode").get<std::string>() == "optimal" ? SearchMode::Optimal : SearchMode::FF;
  r.plan = j.at("plan").get<Plan>();
  r.domain_pddl = j.at("domain_pddl").get<std::string>();
  r.problem_pddl = j.at("problem_pddl").get<std::string>();
}

json config_to_json(const WorkbenchConfig &c) {
  json protos = json::object();
  for (const auto &p : c.prototypes)
    protos[p.type.name] = {{"dims", p.dims}, {"tolerance", p.tolerance}};
  json rules = json::array();
  for (const auto &r : c.stackable.allowed)
    rules.push_back({r.object.name, r.element.name});
  return {{"perception_threshold", c.perception_threshold},
          {"stack_tolerance", c.stack_tolerance},
          {"frame_radius", c.frame_radius},
          {"grasp_radius", c.grasp_radius},
          {"workspace", {{"min", c.workspace.min}, {"max", c.workspace.max}}},
          {"prototypes", protos},
          {"stackable", rules}};
}

} // namespace

void to_json(json &j, const Problem &p) {
  j = {{"name", p.name},     {"scene", p.scene}, {"mode", p.mode},
       {"corrections", p.corrections}, {"init", p.init},   {"goal", p.goal},
       {"from_model", p.from_model}};
}

namespace {

void from_json(const json &j, Problem &p) {
  p.name = j.at("name").get<std::string>();
  p.scene = j.at("scene").get<Scene>();
  p.mode = j.at("mode").get<PerceptionMode>();
  p.corrections = j.at("corrections").get<StateCorrections>();
  p.init = j.at("init").get<WorldState>();
  p.goal = j.at("goal").get<std::set<Literal>>();
  p.from_model = j.value("from_model", false);
}

} // namespace

json session_to_json(const Session &s) {
  json actions = json::array();
  for (const auto &[n, a] : s.domain.actions)
    actions.push_back(a);
  json motions = json::array();
  for (const auto &[n, m] : s.domain.low_level)
    motions.push_back(m);
  json problems = json::array();
  for (const auto &[n, p] : s.problems)
    problems.push_back(p);
  json plans = json::array();
  for (const auto &[id, p] : s.plans)
    plans.push_back(p);
  json j = {{"schema_version", kSchemaVersion},
            {"config", config_to_json(s.config)},
            {"domain",
             {{"name", s.domain.name},
              {"vocabulary", s.domain.vocab},
              {"actions", actions},
              {"low_level", motions}}},
            {"scene", s.scene},
            {"problems", problems},
            {"plans", plans},
            {"next_plan_id", s.next_plan_id},
            {"logs", s.logs},
            {"events", s.events}};
  j["model"] = s.model ? json(*s.model) : json(nullptr);
  if (s.execution)
    j["execution"] = {{"plan_id", s.execution->plan_id},
                      {"next_step", s.execution->next_step},
                      {"log", s.execution->log},
                      {"finished", s.execution->finished}};
  else
    j["execution"] = nullptr;
  return j;
}

Session session_from_json(const json &j) {
  if (!j.is_object() || !j.contains("schema_version"))
    throw Error(ErrorCode::CorruptFile, "missing schema_version");
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion)
    throw Error(ErrorCode::SchemaVersionMismatch,
                "file has schema version " + std::to_string(version) + ", this build reads " +
                    std::to_string(kSchemaVersion));
  try {
    Session s;
    s.config = WorkbenchConfig::parse(j.at("config").dump());
    const json &d = j.at("domain");
    s.domain.name = d.at("name").get<std::string>();
    s.domain.vocab = d.at("vocabulary").get<Vocabulary>();
    for (const auto &a : d.at("actions")) {
      auto action = a.get<HighLevelAction>();
      s.domain.actions.emplace(action.name, std::move(action));
    }
    for (const auto &m : d.at("low_level")) {
      auto motion = m.get<LowLevelAction>();
      s.domain.low_level.emplace(motion.name, std::move(motion));
    }
    s.scene = j.at("scene").get<Scene>();
    for (const auto &p : j.at("problems")) {
      Problem problem;
      from_json(p, problem);
      s.problems.emplace(problem.name, std::move(problem));
    }
    for (const auto &p : j.at("plans")) {
      PlanRecord rec;
      from_json(p, rec);
      s.plans.emplace(rec.id, std::move(rec));
    }
    s.next_plan_id = j.at("next_plan_id").get<int>();
    s.logs = j.at("logs").get<std::vector<ExecutionLog>>();
    s.events = j.at("events").get<std::vector<std::string>>();
    if (!j.at("model").is_null())
      s.model = j.at("model").get<MentalModel>();
    if (const json &e = j.at("execution"); !e.is_null())
      s.execution = ExecutionState{e.at("plan_id").get<int>(), e.at("next_step").get<size_t>(),
                                   e.at("log").get<ExecutionLog>(), e.at("finished").get<bool>()};
    return s;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::CorruptFile, std::string("malformed session: ") + e.what());
  }
}

Session parse_session(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::CorruptFile,
                "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return session_from_json(j);
}

void save_session(const Session &session, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << session_to_json(session).dump(2) << "\n";
  if (!out)
    throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

Session load_session(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::NotFound, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str());
}

} // namespace irp
