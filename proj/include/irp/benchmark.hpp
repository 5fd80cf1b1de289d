#pragma once

#include "irp/session.hpp"

#include <optional>
#include <string>
#include <vector>

namespace irp::bench {

// Four marked table positions A..D along y.
std::vector<PositionInstance> positions();
ObjectInstance object_at(const std::string &id, const TypeTag &type, const std::string &position);
ObjectInstance object_on(const std::string &id, const TypeTag &type, const ObjectInstance &below);

// Demonstration scenes hold a single object on A; every demo moves it to B.
Scene demo_scene(const std::string &id, const TypeTag &type);
DemoScript claw_top_demo();
DemoScript claw_side_demo();
DemoScript suction_top_demo();

// Teaches the actions a task needs and applies the condition edits, on top
// of whatever the session already has.
void prepare_domain(Session &session, int task);

// Session with all three actions taught and edited as for the house tasks.
Session taught_session();

struct PhaseReport {
  std::string problem;
  std::vector<std::string> plan;
  std::vector<std::string> used_actions;
  std::optional<int> optimal_length;
  bool goal_reached = false;
  bool model_matches_perception = false;
  std::string transcript;
};

struct Report {
  int task = 0;
  std::string title;
  bool ok = false;
  // "done" or the stage that failed.
  std::string stage;
  std::string error;
  std::vector<std::string> actions;
  std::vector<PhaseReport> phases;
  Scene final_scene;
  double runtime_ms = 0.0;

  size_t plan_length() const;
  std::optional<int> optimal_length() const;
  bool goal_reached() const;
};

struct Options {
  SearchMode mode = SearchMode::FF;
};

std::string title(int task);

// Runs one task in `session`; tasks 3 and 6 continue from the session's
// mental model, so run 2 and 5 first.
Report run_task(Session &session, int task, const Options &options = {});
// Self-contained: builds a session and runs the prerequisite task if needed.
Report run_benchmark(int task, const Options &options = {});
// Tasks 1..6 in order on one session.
std::vector<Report> run_suite(const Options &options = {});

nlohmann::json to_json(const Report &report);

} // namespace irp::bench
