#include "irp/planner.hpp"

#include "irp/error.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace irp {

size_t StateBits::hash() const {
  size_t h = 1469598103934665603ull;
  for (uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string GroundAction::label() const {
  std::string out = name + "(";
  for (size_t i = 0; i < args.size(); ++i)
    out += (i ? ", " : "") + args[i];
  return out + ")";
}

std::vector<std::string> Plan::render() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < steps.size(); ++i)
    out.push_back(std::to_string(i + 1) + ". " + steps[i].label());
  return out;
}

int PlanningTask::atom_index(const Atom &atom) const {
  // Originals occupy a sorted prefix; complements follow.
  auto end = atoms.begin();
  while (end != atoms.end() && !negated[end - atoms.begin()])
    ++end;
  auto it = std::lower_bound(atoms.begin(), end, atom);
  if (it == end || *it != atom)
    return -1;
  return static_cast<int>(it - atoms.begin());
}

std::string PlanningTask::atom_name(int index) const {
  return (negated[index] ? "¬" : "") + atoms[index].str();
}

bool PlanningTask::applicable(const GroundAction &a, const StateBits &s) const {
  for (int p : a.pre_pos)
    if (!s.test(p))
      return false;
  for (int p : a.pre_neg)
    if (s.test(p))
      return false;
  return true;
}

StateBits PlanningTask::successor(const GroundAction &a, const StateBits &s) const {
  StateBits next = s;
  for (int d : a.del)
    next.reset(d);
  for (int d : a.add)
    next.set(d);
  return next;
}

bool PlanningTask::goal_satisfied(const StateBits &s) const {
  for (int g : goal_pos)
    if (!s.test(g))
      return false;
  for (int g : goal_neg)
    if (s.test(g))
      return false;
  return true;
}

StateBits PlanningTask::encode(const std::set<Atom> &state) const {
  StateBits bits(atoms.size());
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (negated[i])
      continue;
    if (state.count(atoms[i]))
      bits.set(static_cast<int>(i));
    else if (complement[i] >= 0)
      bits.set(complement[i]);
  }
  return bits;
}

std::set<Atom> PlanningTask::decode(const StateBits &s) const {
  std::set<Atom> out;
  for (size_t i = 0; i < atoms.size(); ++i)
    if (!negated[i] && s.test(static_cast<int>(i)))
      out.insert(atoms[i]);
  return out;
}

namespace {

struct LiftedInstance {
  std::string name;
  std::vector<std::string> args;
  std::set<Atom> pre_pos, pre_neg, add, del;
};

Atom substitute(const Atom &a, const std::map<std::string, std::string> &sub) {
  Atom out{a.predicate, {}};
  for (const auto &arg : a.args) {
    auto it = sub.find(arg);
    out.args.push_back(it == sub.end() ? arg : it->second);
  }
  return out;
}

std::vector<std::vector<std::string>> candidates(const HighLevelAction &action,
                                                 const TypeHierarchy &types,
                                                 const InstanceTypes &objects) {
  std::vector<std::vector<std::string>> out;
  for (const auto &p : action.params) {
    std::vector<std::string> c;
    for (const auto &[id, type] : objects)
      if (types.contains(type) && types.is_subtype(type, p.type))
        c.push_back(id);
    out.push_back(std::move(c));
  }
  return out;
}

void check_objects(const Atom &a, const InstanceTypes &objects, const char *where) {
  for (const auto &arg : a.args)
    if (!objects.count(arg))
      throw Error(ErrorCode::UndeclaredObject,
                  std::string(where) + " atom " + a.str() + " uses undeclared object '" + arg + "'");
}

} // namespace

PlanningTask ground_task(const PddlDomain &domain, const PddlProblem &problem) {
  if (!problem.domain_name.empty() && problem.domain_name != domain.name)
    throw Error(ErrorCode::InvalidArgument, "problem '" + problem.name + "' is for domain '" +
                                                problem.domain_name + "', not '" + domain.name +
                                                "'");
  for (const auto &a : problem.init)
    check_objects(a, problem.objects, "initial");
  for (const auto &l : problem.goal)
    check_objects(l.atom, problem.objects, "goal");

  std::set<std::string> fluent;
  for (const auto &a : domain.actions) {
    for (const auto &e : a.eff_plus)
      fluent.insert(e.predicate);
    for (const auto &e : a.eff_minus)
      fluent.insert(e.predicate);
  }
  auto is_static = [&](const Atom &a) { return !fluent.count(a.predicate); };

  std::vector<LiftedInstance> instances;
  for (const auto &action : domain.actions) {
    const auto cands = candidates(action, domain.types, problem.objects);
    std::map<std::string, std::string> sub;
    std::vector<std::string> args;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == action.params.size()) {
        LiftedInstance g{action.name, args, {}, {}, {}, {}};
        for (const auto &l : action.pre)
          (l.positive() ? g.pre_pos : g.pre_neg).insert(substitute(l.atom, sub));
        for (const auto &a : g.pre_pos)
          if (g.pre_neg.count(a) || (is_static(a) && !problem.init.count(a)))
            return;
        for (const auto &a : g.pre_neg)
          if (is_static(a) && problem.init.count(a))
            return;
        for (const auto &a : action.eff_plus)
          g.add.insert(substitute(a, sub));
        for (const auto &a : action.eff_minus) {
          Atom d = substitute(a, sub);
          // Delete-then-add: an atom both deleted and added stays true.
          if (!g.add.count(d))
            g.del.insert(std::move(d));
        }
        instances.push_back(std::move(g));
        return;
      }
      for (const auto &id : cands[i]) {
        sub[action.params[i].name] = id;
        args.push_back(id);
        rec(i + 1);
        args.pop_back();
      }
      sub.erase(action.params[i].name);
    };
    rec(0);
  }
  std::stable_sort(instances.begin(), instances.end(), [](const auto &a, const auto &b) {
    return std::tie(a.name, a.args) < std::tie(b.name, b.args);
  });

  std::set<Atom> universe(problem.init.begin(), problem.init.end());
  std::set<Atom> negative;
  for (const auto &l : problem.goal) {
    universe.insert(l.atom);
    if (!l.positive())
      negative.insert(l.atom);
  }
  for (const auto &g : instances) {
    for (const std::set<Atom> *s : {&g.pre_pos, &g.pre_neg, &g.add, &g.del})
      universe.insert(s->begin(), s->end());
    negative.insert(g.pre_neg.begin(), g.pre_neg.end());
  }

  PlanningTask task;
  task.atoms.assign(universe.begin(), universe.end());
  const size_t originals = task.atoms.size();
  task.negated.assign(originals, false);
  task.complement.assign(originals, -1);
  std::map<Atom, int> index;
  for (size_t i = 0; i < originals; ++i)
    index.emplace(task.atoms[i], static_cast<int>(i));
  for (const auto &a : negative) {
    const int i = index.at(a);
    task.complement[i] = static_cast<int>(task.atoms.size());
    task.atoms.push_back(a);
    task.negated.push_back(true);
    task.complement.push_back(i);
  }

  auto indices = [&](const std::set<Atom> &s) {
    std::vector<int> out;
    for (const auto &a : s)
      out.push_back(index.at(a));
    return out;
  };

  std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>> seen;
  for (const auto &g : instances) {
    GroundAction a{g.name, g.args, indices(g.pre_pos), indices(g.pre_neg), indices(g.add),
                   indices(g.del)};
    if (!seen.insert({a.pre_pos, a.pre_neg, a.add, a.del}).second)
      continue;
    const auto add = a.add;
    const auto del = a.del;
    for (int i : add)
      if (task.complement[i] >= 0)
        a.del.push_back(task.complement[i]);
    for (int i : del)
      if (task.complement[i] >= 0)
        a.add.push_back(task.complement[i]);
    std::sort(a.add.begin(), a.add.end());
    std::sort(a.del.begin(), a.del.end());
    task.actions.push_back(std::move(a));
  }

  task.init = task.encode(problem.init);
  for (const auto &l : problem.goal)
    (l.positive() ? task.goal_pos : task.goal_neg).push_back(index.at(l.atom));
  return task;
}

FFHeuristic::FFHeuristic(const PlanningTask &task) : task_(task) {
  const size_t n = task.atoms.size();
  pre_of_.resize(n);
  achievers_.resize(n);
  for (size_t a = 0; a < task.actions.size(); ++a) {
    const auto &act = task.actions[a];
    std::vector<int> pre = act.pre_pos;
    for (int p : act.pre_neg)
      pre.push_back(task.complement[p]);
    std::sort(pre.begin(), pre.end());
    for (int p : pre)
      pre_of_[p].push_back(static_cast<int>(a));
    for (int f : act.add)
      achievers_[f].push_back(static_cast<int>(a));
    relaxed_pre_.push_back(std::move(pre));
  }
  goals_ = task.goal_pos;
  for (int g : task.goal_neg)
    goals_.push_back(task.complement[g]);
  std::sort(goals_.begin(), goals_.end());
}

HeuristicValue FFHeuristic::evaluate(const StateBits &state) const {
  const size_t n = task_.atoms.size();
  const size_t m = task_.actions.size();
  std::vector<int> fact_layer(n, kInfiniteCost);
  std::vector<int> action_layer(m, kInfiniteCost);
  std::vector<int> missing(m);
  std::vector<std::vector<int>> facts_at(1);
  std::vector<std::vector<int>> actions_at;

  for (size_t f = 0; f < n; ++f)
    if (state.test(static_cast<int>(f))) {
      fact_layer[f] = 0;
      facts_at[0].push_back(static_cast<int>(f));
    }
  std::vector<int> zero_pre;
  for (size_t a = 0; a < m; ++a) {
    missing[a] = static_cast<int>(relaxed_pre_[a].size());
    if (missing[a] == 0)
      zero_pre.push_back(static_cast<int>(a));
  }

  auto goals_reached = [&] {
    for (int g : goals_)
      if (fact_layer[g] == kInfiniteCost)
        return false;
    return true;
  };

  for (int layer = 0; !goals_reached(); ++layer) {
    if (facts_at[layer].empty() && (layer > 0 || zero_pre.empty()))
      return {kInfiniteCost, {}, {}};
    actions_at.emplace_back();
    if (layer == 0)
      for (int a : zero_pre) {
        action_layer[a] = 0;
        actions_at[0].push_back(a);
      }
    for (int f : facts_at[layer])
      for (int a : pre_of_[f])
        if (--missing[a] == 0) {
          action_layer[a] = layer;
          actions_at[layer].push_back(a);
        }
    facts_at.emplace_back();
    for (int a : actions_at[layer])
      for (int f : task_.actions[a].add)
        if (fact_layer[f] == kInfiniteCost) {
          fact_layer[f] = layer + 1;
          facts_at[layer + 1].push_back(f);
        }
  }

  int top = 0;
  for (int g : goals_)
    top = std::max(top, fact_layer[g]);
  std::vector<std::vector<int>> open(top + 1);
  std::vector<std::vector<char>> queued(top + 1, std::vector<char>(n, 0));
  std::vector<std::vector<char>> marked(top + 1, std::vector<char>(n, 0));
  for (int g : goals_)
    if (fact_layer[g] > 0 && !queued[fact_layer[g]][g]) {
      queued[fact_layer[g]][g] = 1;
      open[fact_layer[g]].push_back(g);
    }

  HeuristicValue result;
  std::vector<char> selected(m, 0);
  for (int i = top; i >= 1; --i) {
    std::sort(open[i].begin(), open[i].end());
    for (int g : open[i]) {
      if (marked[i][g])
        continue;
      int chosen = -1;
      for (int a : achievers_[g])
        if (action_layer[a] == i - 1) {
          chosen = a;
          break;
        }
      if (!selected[chosen]) {
        selected[chosen] = 1;
        result.relaxed_plan.push_back(chosen);
      }
      for (int p : relaxed_pre_[chosen]) {
        const int l = fact_layer[p];
        if (l > 0 && !marked[i - 1][p] && !queued[l][p]) {
          queued[l][p] = 1;
          open[l].push_back(p);
        }
      }
      for (int f : task_.actions[chosen].add)
        marked[i][f] = 1;
    }
  }
  result.value = static_cast<int>(result.relaxed_plan.size());
  for (int a : result.relaxed_plan)
    if (action_layer[a] == 0)
      result.helpful.push_back(a);
  std::sort(result.helpful.begin(), result.helpful.end());
  return result;
}

HeuristicValue h_ff(const PlanningTask &task, const StateBits &state) {
  return FFHeuristic(task).evaluate(state);
}

namespace {

struct Node {
  StateBits state;
  int parent;
  int action;
};

class Search {
public:
  Search(const PlanningTask &task, const SearchConfig &config, SearchStats &stats)
      : task_(task), config_(config), stats_(stats), start_(std::chrono::steady_clock::now()) {}

  Plan run() {
    if (task_.goal_satisfied(task_.init))
      return {};
    if (config_.mode == SearchMode::Optimal)
      return breadth_first();
    Plan found;
    if (auto p = hill_climbing()) {
      found = std::move(*p);
    } else {
      stats_.ehc_failed = true;
      found = greedy_best_first();
    }
    found = shorten(std::move(found));
    for (int depth = 1; depth <= kNeighborhoodDepth; ++depth)
      if (auto better = neighborhood_search(found, depth))
        found = shorten(std::move(*better));
    return found;
  }

private:
  void tick() {
    ++stats_.expanded;
    if (stats_.generated >= config_.node_limit)
      throw Error(ErrorCode::ResourceLimit,
                  "node limit of " + std::to_string(config_.node_limit) + " reached");
    if ((stats_.expanded & 63) == 1) {
      if (config_.stop && config_.stop->load())
        throw Error(ErrorCode::ResourceLimit, "search cancelled");
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
      if (elapsed > config_.time_limit_ms)
        throw Error(ErrorCode::ResourceLimit,
                    "time limit of " + std::to_string(config_.time_limit_ms) + " ms reached");
    }
  }

  int add_node(StateBits s, int parent, int action) {
    ++stats_.generated;
    nodes_.push_back({std::move(s), parent, action});
    return static_cast<int>(nodes_.size()) - 1;
  }

  Plan extract(int node) const {
    Plan p;
    for (int i = node; nodes_[i].parent >= 0; i = nodes_[i].parent)
      p.steps.push_back(task_.actions[nodes_[i].action]);
    std::reverse(p.steps.begin(), p.steps.end());
    return p;
  }

  HeuristicValue evaluate(const StateBits &s) {
    ++stats_.evaluated;
    return heuristic_.evaluate(s);
  }

  [[noreturn]] void unsolvable() const {
    throw Error(ErrorCode::NoSolution, "the goal is unreachable from the initial state");
  }

  Plan breadth_first() {
    std::unordered_set<StateBits, StateBitsHash> seen{task_.init};
    std::deque<int> queue{add_node(task_.init, -1, -1)};
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      tick();
      for (size_t a = 0; a < task_.actions.size(); ++a) {
        if (!task_.applicable(task_.actions[a], nodes_[cur].state))
          continue;
        StateBits next = task_.successor(task_.actions[a], nodes_[cur].state);
        if (!seen.insert(next).second)
          continue;
        const bool goal = task_.goal_satisfied(next);
        const int id = add_node(std::move(next), cur, static_cast<int>(a));
        if (goal)
          return extract(id);
        queue.push_back(id);
      }
    }
    unsolvable();
  }

  std::optional<Plan> hill_climbing() {
    int current = add_node(task_.init, -1, -1);
    HeuristicValue hv = evaluate(task_.init);
    if (hv.infinite())
      unsolvable();
    std::unordered_map<int, std::vector<int>> helpful{{current, hv.helpful}};
    int h = hv.value;
    while (h > 0) {
      std::unordered_set<StateBits, StateBitsHash> seen{nodes_[current].state};
      std::deque<int> queue{current};
      int improved = -1;
      int improved_h = h;
      while (!queue.empty() && improved < 0) {
        const int cur = queue.front();
        queue.pop_front();
        tick();
        for (int a : helpful[cur]) {
          StateBits next = task_.successor(task_.actions[a], nodes_[cur].state);
          if (!seen.insert(next).second)
            continue;
          HeuristicValue v = evaluate(next);
          if (v.infinite())
            continue;
          const int id = add_node(std::move(next), cur, a);
          if (v.value < h) {
            improved = id;
            improved_h = v.value;
            helpful[id] = std::move(v.helpful);
            break;
          }
          helpful[id] = std::move(v.helpful);
          queue.push_back(id);
        }
      }
      if (improved < 0)
        return std::nullopt;
      current = improved;
      h = improved_h;
    }
    return extract(current);
  }

  Plan greedy_best_first() {
    using Entry = std::tuple<int, size_t, int>; // h, insertion order, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_set<StateBits, StateBitsHash> seen{task_.init};
    const HeuristicValue h0 = evaluate(task_.init);
    if (h0.infinite())
      unsolvable();
    size_t order = 0;
    open.emplace(h0.value, order++, add_node(task_.init, -1, -1));
    while (!open.empty()) {
      const int cur = std::get<2>(open.top());
      open.pop();
      tick();
      for (size_t a = 0; a < task_.actions.size(); ++a) {
        if (!task_.applicable(task_.actions[a], nodes_[cur].state))
          continue;
        StateBits next = task_.successor(task_.actions[a], nodes_[cur].state);
        if (!seen.insert(next).second)
          continue;
        if (task_.goal_satisfied(next))
          return extract(add_node(std::move(next), cur, static_cast<int>(a)));
        const HeuristicValue v = evaluate(next);
        if (v.infinite())
          continue;
        open.emplace(v.value, order++, add_node(std::move(next), cur, static_cast<int>(a)));
      }
    }
    unsolvable();
  }

  // Cuts loops (a state revisited later in the plan), then greedy action
  // elimination: drop a step together with the later steps it leaves
  // inapplicable whenever the goal still holds at the end.
  Plan shorten(Plan p) const {
    std::vector<StateBits> states{task_.init};
    for (const auto &a : p.steps)
      states.push_back(task_.successor(a, states.back()));
    Plan looped;
    for (size_t i = 0; i < p.steps.size();) {
      size_t last = i;
      for (size_t j = states.size() - 1; j > i; --j)
        if (states[j] == states[i]) {
          last = j;
          break;
        }
      if (last > i) {
        i = last;
        continue;
      }
      looped.steps.push_back(p.steps[i]);
      ++i;
    }

    for (size_t i = 0; i < looped.steps.size();) {
      std::vector<GroundAction> kept(looped.steps.begin(), looped.steps.begin() + i);
      StateBits s = task_.init;
      for (const auto &a : kept)
        s = task_.successor(a, s);
      for (size_t j = i + 1; j < looped.steps.size(); ++j)
        if (task_.applicable(looped.steps[j], s)) {
          s = task_.successor(looped.steps[j], s);
          kept.push_back(looped.steps[j]);
        }
      if (task_.goal_satisfied(s))
        looped.steps = std::move(kept);
      else
        ++i;
    }
    return looped;
  }

  static constexpr int kNeighborhoodDepth = 3;
  static constexpr size_t kNeighborhoodStates = 50'000;

  // Plan neighborhood graph search: BFS restricted to the states within
  // `depth` steps of some state on the plan. Returns a strictly shorter plan.
  std::optional<Plan> neighborhood_search(const Plan &p, int depth) {
    std::unordered_map<StateBits, int, StateBitsHash> index;
    std::vector<StateBits> pool;
    auto admit = [&](StateBits s) {
      if (index.count(s) || pool.size() >= kNeighborhoodStates)
        return false;
      index.emplace(s, static_cast<int>(pool.size()));
      pool.push_back(std::move(s));
      return true;
    };
    StateBits s = task_.init;
    admit(s);
    for (const auto &a : p.steps) {
      s = task_.successor(a, s);
      admit(s);
    }
    std::vector<int> frontier(pool.size());
    std::iota(frontier.begin(), frontier.end(), 0);
    for (int k = 0; k < depth && pool.size() < kNeighborhoodStates; ++k) {
      std::vector<int> next;
      for (int i : frontier) {
        tick();
        for (const auto &a : task_.actions)
          if (task_.applicable(a, pool[i]) && admit(task_.successor(a, pool[i])))
            next.push_back(static_cast<int>(pool.size()) - 1);
      }
      frontier = std::move(next);
    }

    std::vector<std::pair<int, int>> parent(pool.size(), {-1, -1});
    std::vector<bool> visited(pool.size(), false);
    std::deque<int> queue{0};
    visited[0] = true;
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      if (task_.goal_satisfied(pool[cur])) {
        Plan q;
        for (int i = cur; i != 0; i = parent[i].first)
          q.steps.push_back(task_.actions[parent[i].second]);
        std::reverse(q.steps.begin(), q.steps.end());
        if (q.cost() < p.cost())
          return q;
        return std::nullopt;
      }
      tick();
      for (size_t a = 0; a < task_.actions.size(); ++a) {
        if (!task_.applicable(task_.actions[a], pool[cur]))
          continue;
        auto it = index.find(task_.successor(task_.actions[a], pool[cur]));
        if (it == index.end() || visited[it->second])
          continue;
        visited[it->second] = true;
        parent[it->second] = {cur, static_cast<int>(a)};
        queue.push_back(it->second);
      }
    }
    return std::nullopt;
  }

  const PlanningTask &task_;
  const SearchConfig &config_;
  SearchStats &stats_;
  FFHeuristic heuristic_{task_};
  std::chrono::steady_clock::time_point start_;
  std::vector<Node> nodes_;
};

} // namespace

Plan plan(const PlanningTask &task, const SearchConfig &config, SearchStats *stats) {
  SearchStats local;
  Search search(task, config, stats ? *stats : local);
  return search.run();
}

PlanValidation validate_plan(const PlanningTask &task, const Plan &p) {
  StateBits s = task.init;
  for (size_t i = 0; i < p.steps.size(); ++i) {
    const auto &step = p.steps[i];
    auto it = std::find_if(task.actions.begin(), task.actions.end(), [&](const GroundAction &a) {
      return a.name == step.name && a.args == step.args;
    });
    if (it == task.actions.end())
      return {false, i, "step " + std::to_string(i + 1) + " " + step.label() +
                            " is not a ground action of this task"};
    for (int q : it->pre_pos)
      if (!s.test(q))
        return {false, i, "step " + std::to_string(i + 1) + " " + step.label() + " requires " +
                              task.atom_name(q)};
    for (int q : it->pre_neg)
      if (s.test(q))
        return {false, i, "step " + std::to_string(i + 1) + " " + step.label() + " requires ¬" +
                              task.atoms[q].str()};
    s = task.successor(*it, s);
  }
  if (!task.goal_satisfied(s)) {
    std::string missing;
    for (int g : task.goal_pos)
      if (!s.test(g))
        missing += (missing.empty() ? "" : ", ") + task.atom_name(g);
    for (int g : task.goal_neg)
      if (s.test(g))
        missing += (missing.empty() ? "¬" : ", ¬") + task.atoms[g].str();
    return {false, std::nullopt, "goal not reached: " + missing};
  }
  return {true, std::nullopt, "plan valid"};
}

std::optional<int> bfs_oracle(const PddlDomain &domain, const PddlProblem &problem,
                              size_t max_states) {
  // Straightforward successor generation over sets of atoms: every parameter
  // tuple is checked against the current state directly.
  auto satisfied = [&](const std::set<Literal> &goal, const std::set<Atom> &s) {
    for (const auto &l : goal)
      if ((s.count(l.atom) != 0) != l.positive())
        return false;
    return true;
  };
  if (satisfied(problem.goal, problem.init))
    return 0;

  std::vector<std::pair<const HighLevelAction *, std::vector<std::vector<std::string>>>> lifted;
  for (const auto &a : domain.actions)
    lifted.emplace_back(&a, candidates(a, domain.types, problem.objects));

  std::set<std::set<Atom>> seen{problem.init};
  std::vector<std::set<Atom>> layer{problem.init};
  for (int depth = 1; !layer.empty(); ++depth) {
    std::vector<std::set<Atom>> next_layer;
    for (const auto &s : layer) {
      for (const auto &[action, cands] : lifted) {
        std::vector<size_t> idx(cands.size(), 0);
        bool empty = false;
        for (const auto &c : cands)
          empty |= c.empty();
        if (empty)
          continue;
        while (true) {
          std::map<std::string, std::string> sub;
          for (size_t i = 0; i < idx.size(); ++i)
            sub[action->params[i].name] = cands[i][idx[i]];
          bool ok = true;
          for (const auto &l : action->pre)
            if ((s.count(substitute(l.atom, sub)) != 0) != l.positive()) {
              ok = false;
              break;
            }
          if (ok) {
            std::set<Atom> t = s;
            for (const auto &d : action->eff_minus)
              t.erase(substitute(d, sub));
            for (const auto &d : action->eff_plus)
              t.insert(substitute(d, sub));
            if (seen.insert(t).second) {
              if (satisfied(problem.goal, t))
                return depth;
              if (seen.size() > max_states)
                throw Error(ErrorCode::TooLarge, "more than " + std::to_string(max_states) +
                                                     " reachable states");
              next_layer.push_back(std::move(t));
            }
          }
          size_t k = 0;
          while (k < idx.size() && ++idx[k] == cands[k].size())
            idx[k++] = 0;
          if (k == idx.size())
            break;
        }
      }
    }
    layer = std::move(next_layer);
  }
  return std::nullopt;
}

} // namespace irp
