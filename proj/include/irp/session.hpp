#pragma once

#include "irp/config.hpp"
#include "irp/demonstration.hpp"
#include "irp/execution.hpp"
#include "irp/inference.hpp"
#include "irp/pddl.hpp"
#include "irp/planner.hpp"
#include "irp/scene.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace irp {

struct Domain {
  std::string name = "workbench";
  Vocabulary vocab = Vocabulary::builtin();
  std::map<std::string, HighLevelAction> actions;
  std::map<std::string, LowLevelAction> low_level;

  PddlDomain to_pddl() const;
  bool operator==(const Domain &) const = default;
};

struct Problem {
  std::string name;
  Scene scene;
  PerceptionMode mode = PerceptionMode::Full;
  StateCorrections corrections;
  WorldState init;
  std::set<Literal> goal;
  // Created from the mental model rather than by perceiving `scene`.
  bool from_model = false;

  PddlProblem to_pddl(const std::string &domain_name) const;
  bool operator==(const Problem &) const = default;
};

struct PlanRecord {
  int id = 0;
  std::string problem;
  SearchMode mode = SearchMode::FF;
  // Steps carry name and arguments only.
  Plan plan;
  std::string domain_pddl;
  std::string problem_pddl;

  bool operator==(const PlanRecord &) const = default;
};

struct ExecutionState {
  int plan_id = 0;
  size_t next_step = 0;
  ExecutionLog log;
  bool finished = false;

  bool operator==(const ExecutionState &) const = default;
};

// Everything that persists. The live demo lives in SessionService.
struct Session {
  WorkbenchConfig config = WorkbenchConfig::defaults();
  Domain domain;
  // The simulated world as it is now.
  Scene scene;
  std::optional<MentalModel> model;
  std::map<std::string, Problem> problems;
  std::map<int, PlanRecord> plans;
  int next_plan_id = 1;
  std::optional<ExecutionState> execution;
  std::vector<ExecutionLog> logs;
  std::vector<std::string> events;

  bool operator==(const Session &) const = default;
};

// Lifts a finished demonstration into a new action linked to its motion.
const HighLevelAction &teach_action(Session &session, const std::string &name,
                                    const DemoResult &demo);
void add_action(Session &session, const HighLevelAction &action,
                const std::optional<LowLevelAction> &motion = std::nullopt);
const HighLevelAction &modify_action(Session &session, const std::string &name,
                                     const ActionEdit &edit);
const HighLevelAction &copy_action(Session &session, const std::string &name,
                                   const std::string &new_name);

// Perceives `scene` (NoActionsDefined when the domain has no action yet).
Problem &create_problem_from_scene(Session &session, const std::string &name, const Scene &scene,
                                   const StateCorrections &corrections = {},
                                   PerceptionMode mode = PerceptionMode::Full);
// Reuses the mental model and current scene without perceiving again.
Problem &create_problem_from_model(Session &session, const std::string &name);
// Re-derives init after type or atom corrections; the goal is kept as is.
Problem &correct_problem(Session &session, const std::string &name,
                         const StateCorrections &corrections);
// Every literal must be well typed over the problem's instances.
Problem &set_goal(Session &session, const std::string &name, const std::set<Literal> &goal);

// Throws EmptyGoal, NoSolution or ResourceLimit.
const PlanRecord &solve(Session &session, const std::string &problem, const SearchConfig &config);

// Starts (or continues) executing a stored plan. The mental model carries
// over when the problem was created from it.
LogEntry execute_next_step(Session &session, int plan_id, const ConfirmFn &confirm = {},
                           std::chrono::milliseconds watchdog = std::chrono::seconds(300));
// Runs every remaining step (auto-confirm when `confirm` is empty).
ExecutionLog execute_all(Session &session, int plan_id, const ConfirmFn &confirm = {});

struct ActionSummary {
  std::string name;
  std::vector<std::string> params; // "obj - cube"
  std::vector<ConditionRow> conditions;
};

struct Hint {
  char kind; // 'a'..'d'
  std::string text;
};

struct DebugReport {
  std::vector<ActionSummary> actions;
  std::vector<std::string> init;
  std::vector<std::string> goal;
  std::vector<Hint> hints;
  std::string last_failure;
};

extern const char *const kGoalHint;

DebugReport debug_summary(const Session &session, const std::string &problem,
                          const std::string &last_failure = {});

constexpr int kSchemaVersion = 1;

nlohmann::json session_to_json(const Session &session);
// SchemaVersionMismatch or CorruptFile.
Session session_from_json(const nlohmann::json &j);
void save_session(const Session &session, const std::string &path);
Session load_session(const std::string &path);
// Parses text; CorruptFile reports the byte offset of a syntax error.
Session parse_session(const std::string &text);

void to_json(nlohmann::json &j, const DebugReport &r);
void to_json(nlohmann::json &j, const PlanRecord &r);
void to_json(nlohmann::json &j, const Problem &p);

} // namespace irp
