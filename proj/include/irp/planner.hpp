#pragma once

#include "irp/pddl.hpp"
#include "irp/world_state.hpp"

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace irp {

// Fixed-width set of atom indices; the search state representation.
class StateBits {
public:
  StateBits() = default;
  explicit StateBits(size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  size_t size() const { return size_; }
  size_t hash() const;

  bool operator==(const StateBits &) const = default;

private:
  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

struct StateBitsHash {
  size_t operator()(const StateBits &s) const { return s.hash(); }
};

struct GroundAction {
  std::string name;
  std::vector<std::string> args;
  // Indices into PlanningTask::atoms. pre_neg holds the original atoms;
  // add/del already include the mirrored updates of complement atoms.
  std::vector<int> pre_pos;
  std::vector<int> pre_neg;
  std::vector<int> add;
  std::vector<int> del;

  // move(obj1, A, C)
  std::string label() const;
  bool operator==(const GroundAction &) const = default;
};

// Grounded task. Every atom that occurs negatively (in a precondition or the
// goal) gets a complement atom that is true exactly when the atom is false.
struct PlanningTask {
  std::vector<Atom> atoms;
  // complement[i]: index of the complement of atom i, or -1.
  std::vector<int> complement;
  // True for complement atoms.
  std::vector<bool> negated;
  // Sorted by (name, args).
  std::vector<GroundAction> actions;
  StateBits init;
  std::vector<int> goal_pos;
  std::vector<int> goal_neg;

  int atom_index(const Atom &atom) const;
  std::string atom_name(int index) const;
  bool applicable(const GroundAction &a, const StateBits &s) const;
  StateBits successor(const GroundAction &a, const StateBits &s) const;
  bool goal_satisfied(const StateBits &s) const;
  StateBits encode(const std::set<Atom> &atoms) const;
  std::set<Atom> decode(const StateBits &s) const;
};

// Instantiates every action over all type-compatible argument tuples, prunes
// statically inconsistent or statically inapplicable instances, compiles
// negative conditions and drops duplicates.
PlanningTask ground_task(const PddlDomain &domain, const PddlProblem &problem);

struct Plan {
  std::vector<GroundAction> steps;

  size_t cost() const { return steps.size(); }
  // "1. move(obj1, A, C)", ...
  std::vector<std::string> render() const;
  bool operator==(const Plan &) const = default;
};

enum class SearchMode { FF, Optimal };

struct SearchConfig {
  SearchMode mode = SearchMode::FF;
  size_t node_limit = 2'000'000;
  long time_limit_ms = 60'000;
  // Cooperative cancellation, polled every few expansions.
  const std::atomic<bool> *stop = nullptr;
};

struct SearchStats {
  size_t expanded = 0;
  size_t generated = 0;
  size_t evaluated = 0;
  bool ehc_failed = false;
};

constexpr int kInfiniteCost = std::numeric_limits<int>::max();

struct HeuristicValue {
  int value = 0; // kInfiniteCost when the goal is relaxed-unreachable
  std::vector<int> relaxed_plan;
  // Relaxed-plan actions applicable in the evaluated state.
  std::vector<int> helpful;

  bool infinite() const { return value == kInfiniteCost; }
};

// Relaxed planning graph heuristic with plan extraction; achievers are the
// ones first applicable one layer below the goal, ties by action order.
class FFHeuristic {
public:
  explicit FFHeuristic(const PlanningTask &task);
  HeuristicValue evaluate(const StateBits &state) const;

private:
  const PlanningTask &task_;
  std::vector<std::vector<int>> relaxed_pre_;
  std::vector<std::vector<int>> pre_of_;
  std::vector<std::vector<int>> achievers_;
  std::vector<int> goals_;
};

HeuristicValue h_ff(const PlanningTask &task, const StateBits &state);

// FF mode: enforced hill-climbing on helpful actions, greedy best-first over
// all actions when it gets stuck. Optimal mode: breadth-first search.
// Throws NoSolution or ResourceLimit.
Plan plan(const PlanningTask &task, const SearchConfig &config, SearchStats *stats = nullptr);

struct PlanValidation {
  bool valid = false;
  std::optional<size_t> failed_step; // 0-based
  std::string diagnostic;
};

PlanValidation validate_plan(const PlanningTask &task, const Plan &plan);

// Breadth-first optimal plan length computed directly on the lifted model
// (no grounding shared with the planner). nullopt = unsolvable.
std::optional<int> bfs_oracle(const PddlDomain &domain, const PddlProblem &problem,
                              size_t max_states = 1'000'000);

} // namespace irp
