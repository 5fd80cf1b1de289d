#pragma once

#include "irp/config.hpp"
#include "irp/demonstration.hpp"
#include "irp/inference.hpp"
#include "irp/planner.hpp"
#include "irp/scene.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace irp {

// The executor's belief: where landmarks were last seen and which atoms hold.
// Updated from action effects, not from perception.
struct MentalModel {
  // Objects: base pose. Positions: table point.
  std::map<std::string, Vec3> poses;
  WorldState atoms;
  // Instances moved since the model was last perceived.
  std::set<std::string> dirty;
  PerceptionMode mode = PerceptionMode::Full;

  bool operator==(const MentalModel &) const = default;
};

MentalModel init_mental_model(const Scene &scene, const WorkbenchConfig &config,
                              const Vocabulary &vocab, PerceptionMode mode,
                              const StateCorrections &corrections = {});

enum class Verdict { Ok, Rejected };
enum class StepOutcome { Ok, Rejected, Failed };
const char *to_string(StepOutcome outcome);

// Called after the motion with the step and the resulting scene. May block;
// the executor gives up after the watchdog timeout and treats it as a reject.
using ConfirmFn = std::function<Verdict(const GroundAction &step, const Scene &after)>;

struct LogEntry {
  std::string action;
  std::vector<std::string> args;
  // Demo landmark id -> instance id the motion was bound to.
  std::map<std::string, std::string> bindings;
  std::set<Atom> pre_state;
  std::set<Atom> post_state;
  StepOutcome outcome = StepOutcome::Ok;
  std::string message;

  bool operator==(const LogEntry &) const = default;
};

struct ExecutionLog {
  std::vector<LogEntry> entries;

  void append(LogEntry e) { entries.push_back(std::move(e)); }
  std::string transcript() const;
  bool operator==(const ExecutionLog &) const = default;
};

void to_json(nlohmann::json &j, const StepOutcome &o);
void from_json(const nlohmann::json &j, StepOutcome &o);
void to_json(nlohmann::json &j, const LogEntry &e);
void from_json(const nlohmann::json &j, LogEntry &e);
void to_json(nlohmann::json &j, const ExecutionLog &l);
void from_json(const nlohmann::json &j, ExecutionLog &l);
void to_json(nlohmann::json &j, const MentalModel &m);
void from_json(const nlohmann::json &j, MentalModel &m);

// What the executor needs from the domain.
struct ExecutionContext {
  const Vocabulary &vocab;
  const WorkbenchConfig &config;
  const std::map<std::string, HighLevelAction> &actions;
  const std::map<std::string, LowLevelAction> &low_level;
  std::chrono::milliseconds watchdog{std::chrono::seconds(300)};
};

struct StepResult {
  Scene scene;
  MentalModel model;
  LogEntry entry;
};

// Throws PreconditionUnsatisfied (nothing moves) when the step's
// preconditions do not hold in the model. Motion errors become a FAILED entry.
StepResult execute_plan_step(const MentalModel &model, const Scene &scene, const GroundAction &step,
                             const ExecutionContext &ctx, const ConfirmFn &confirm = {});

struct ExecutionResult {
  Scene scene;
  MentalModel model;
  ExecutionLog log;
  // Evaluated on the final model when a goal is given.
  std::optional<bool> goal_reached;
};

// Checks the whole plan symbolically first, then runs steps until the first
// one that is not OK.
ExecutionResult execute_plan(const MentalModel &model, const Scene &scene, const Plan &plan,
                             const ExecutionContext &ctx, const ConfirmFn &confirm = {},
                             const std::set<Literal> *goal = nullptr);

bool satisfies(const WorldState &state, const std::set<Literal> &goal);

} // namespace irp
