#include "irp/execution.hpp"

#include "irp/error.hpp"
#include "irp/json_io.hpp"

#include <future>
#include <sstream>
#include <thread>

namespace irp {

MentalModel init_mental_model(const Scene &scene, const WorkbenchConfig &config,
                              const Vocabulary &vocab, PerceptionMode mode,
                              const StateCorrections &corrections) {
  MentalModel m;
  m.mode = mode;
  m.atoms = perceive_corrected(scene, config, vocab, mode, corrections);
  for (const auto &o : scene.objects)
    if (m.atoms.instances.count(o.id))
      m.poses.emplace(o.id, o.pose);
  for (const auto &p : scene.positions)
    m.poses.emplace(p.id, p.point());
  return m;
}

const char *to_string(StepOutcome outcome) {
  switch (outcome) {
  case StepOutcome::Ok:
    return "OK";
  case StepOutcome::Rejected:
    return "REJECTED";
  case StepOutcome::Failed:
    return "FAILED";
  }
  return "FAILED";
}

bool satisfies(const WorldState &state, const std::set<Literal> &goal) {
  for (const auto &l : goal)
    if (state.holds(l.atom) != l.positive())
      return false;
  return true;
}

namespace {

std::string label(const std::string &name, const std::vector<std::string> &args) {
  return GroundAction{name, args, {}, {}, {}, {}}.label();
}

struct BoundStep {
  const HighLevelAction *action;
  std::map<std::string, std::string> substitution;
  GroundConditions ground;
};

BoundStep bind_step(const GroundAction &step, const WorldState &state,
                    const ExecutionContext &ctx) {
  auto it = ctx.actions.find(step.name);
  if (it == ctx.actions.end())
    throw Error(ErrorCode::NotFound, "no action named '" + step.name + "'");
  const HighLevelAction &hl = it->second;
  BoundStep b{&hl, bind_arguments(hl, step.args), {}};
  for (size_t i = 0; i < step.args.size(); ++i) {
    auto t = state.instances.find(step.args[i]);
    if (t == state.instances.end())
      throw Error(ErrorCode::UnknownInstance,
                  "'" + step.args[i] + "' is not in the mental model");
    if (!ctx.vocab.types.is_subtype(t->second, hl.params[i].type))
      throw Error(ErrorCode::TypeViolation, step.args[i] + " is not a " + hl.params[i].type.name);
  }
  b.ground = ground_conditions(hl, b.substitution);
  // Delete-then-add, as in the planner.
  for (const auto &a : b.ground.eff_plus)
    b.ground.eff_minus.erase(a);
  return b;
}

std::vector<std::string> unmet(const GroundConditions &g, const WorldState &state) {
  std::vector<std::string> out;
  for (const auto &l : g.pre)
    if (state.holds(l.atom) != l.positive())
      out.push_back(to_english(l));
  return out;
}

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items)
    out += (out.empty() ? "" : "; ") + s;
  return out;
}

} // namespace

StepResult execute_plan_step(const MentalModel &model, const Scene &scene, const GroundAction &step,
                             const ExecutionContext &ctx, const ConfirmFn &confirm) {
  const BoundStep b = bind_step(step, model.atoms, ctx);
  if (auto missing = unmet(b.ground, model.atoms); !missing.empty())
    throw Error(ErrorCode::PreconditionUnsatisfied,
                label(step.name, step.args) + " requires: " + join(missing));

  StepResult r{scene, model, {}};
  LogEntry &e = r.entry;
  e.action = step.name;
  e.args = step.args;
  e.pre_state = model.atoms.atoms;
  e.post_state = model.atoms.atoms;
  for (const auto &p : b.action->params)
    if (!p.origin.empty())
      e.bindings[p.origin] = b.substitution.at(p.name);

  auto ll = ctx.low_level.find(b.action->low_level);
  if (b.action->low_level.empty() || ll == ctx.low_level.end()) {
    e.outcome = StepOutcome::Failed;
    e.message = "action '" + step.name + "' has no taught motion";
    return r;
  }

  std::map<std::string, Vec3> believed;
  for (const auto &o : scene.objects)
    if (auto it = model.poses.find(o.id); it != model.poses.end())
      believed.emplace(o.id, it->second);

  Scene after;
  try {
    after = execute_low_level(ll->second, scene, e.bindings, ctx.config, &believed);
  } catch (const Error &err) {
    e.outcome = StepOutcome::Failed;
    e.message = err.what();
    return r;
  }

  Verdict verdict = Verdict::Ok;
  if (confirm) {
    auto promise = std::make_shared<std::promise<Verdict>>();
    auto future = promise->get_future();
    std::thread([promise, confirm, step, after] {
      try {
        promise->set_value(confirm(step, after));
      } catch (...) {
        promise->set_exception(std::current_exception());
      }
    }).detach();
    if (future.wait_for(ctx.watchdog) != std::future_status::ready) {
      verdict = Verdict::Rejected;
      e.message = "no confirmation before the watchdog expired";
    } else {
      try {
        verdict = future.get();
      } catch (const std::exception &ex) {
        verdict = Verdict::Rejected;
        e.message = std::string("confirmation failed: ") + ex.what();
      }
    }
  }

  r.scene = after;
  if (verdict == Verdict::Rejected) {
    // Rejection rolls back to what the sensors say.
    r.model = init_mental_model(after, ctx.config, ctx.vocab, PerceptionMode::Full);
    e.outcome = StepOutcome::Rejected;
    if (e.message.empty())
      e.message = "rejected by the user";
    e.post_state = r.model.atoms.atoms;
    return r;
  }

  r.model.atoms = apply_effects(model.atoms, b.ground.eff_plus, b.ground.eff_minus);
  for (const auto &o : after.objects) {
    auto it = r.model.poses.find(o.id);
    if (it != r.model.poses.end() && !(it->second == o.pose)) {
      it->second = o.pose;
      r.model.dirty.insert(o.id);
    }
  }
  e.outcome = StepOutcome::Ok;
  e.post_state = r.model.atoms.atoms;
  return r;
}

ExecutionResult execute_plan(const MentalModel &model, const Scene &scene, const Plan &plan,
                             const ExecutionContext &ctx, const ConfirmFn &confirm,
                             const std::set<Literal> *goal) {
  WorldState believed = model.atoms;
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    const BoundStep b = bind_step(plan.steps[i], believed, ctx);
    if (auto missing = unmet(b.ground, believed); !missing.empty())
      throw Error(ErrorCode::PreconditionUnsatisfied,
                  "step " + std::to_string(i + 1) + " " + plan.steps[i].label() +
                      " requires: " + join(missing));
    believed = apply_effects(believed, b.ground.eff_plus, b.ground.eff_minus);
  }

  ExecutionResult out{scene, model, {}, std::nullopt};
  for (const auto &step : plan.steps) {
    StepResult r = execute_plan_step(out.model, out.scene, step, ctx, confirm);
    out.scene = std::move(r.scene);
    out.model = std::move(r.model);
    const bool ok = r.entry.outcome == StepOutcome::Ok;
    out.log.append(std::move(r.entry));
    if (!ok)
      break;
  }
  if (goal)
    out.goal_reached = satisfies(out.model.atoms, *goal);
  return out;
}

std::string ExecutionLog::transcript() const {
  std::ostringstream os;
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto &e = entries[i];
    os << i + 1 << ". " << label(e.action, e.args) << "  " << to_string(e.outcome);
    if (!e.message.empty())
      os << "  (" << e.message << ")";
    os << "\n";
  }
  return os.str();
}

void to_json(json &j, const StepOutcome &o) { j = to_string(o); }
void from_json(const json &j, StepOutcome &o) {
  const auto s = j.get<std::string>();
  if (s == "OK")
    o = StepOutcome::Ok;
  else if (s == "REJECTED")
    o = StepOutcome::Rejected;
  else if (s == "FAILED")
    o = StepOutcome::Failed;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown step outcome '" + s + "'");
}

void to_json(json &j, const LogEntry &e) {
  j = {{"action", e.action},         {"args", e.args},
       {"bindings", e.bindings},     {"pre_state", e.pre_state},
       {"post_state", e.post_state}, {"outcome", e.outcome},
       {"message", e.message}};
}
void from_json(const json &j, LogEntry &e) {
  e.action = j.at("action").get<std::string>();
  e.args = j.at("args").get<std::vector<std::string>>();
  e.bindings = j.at("bindings").get<std::map<std::string, std::string>>();
  e.pre_state = j.at("pre_state").get<std::set<Atom>>();
  e.post_state = j.at("post_state").get<std::set<Atom>>();
  e.outcome = j.at("outcome").get<StepOutcome>();
  e.message = j.value("message", "");
}

void to_json(json &j, const ExecutionLog &l) { j = {{"entries", l.entries}}; }
void from_json(const json &j, ExecutionLog &l) {
  l.entries = j.at("entries").get<std::vector<LogEntry>>();
}

void to_json(json &j, const MentalModel &m) {
  j = {{"poses", m.poses}, {"atoms", m.atoms}, {"dirty", m.dirty}, {"mode", m.mode}};
}
void from_json(const json &j, MentalModel &m) {
  m.poses = j.at("poses").get<std::map<std::string, Vec3>>();
  m.atoms = j.at("atoms").get<WorldState>();
  m.dirty = j.at("dirty").get<std::set<std::string>>();
  m.mode = j.at("mode").get<PerceptionMode>();
}

} // namespace irp
