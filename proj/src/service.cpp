#include "irp/service.hpp"

#include "irp/benchmark.hpp"
#include "irp/error.hpp"

#include <random>

namespace irp {

SessionService::SessionService(Session session) : session_(std::move(session)) {
  if (session_.scene.positions.empty() && session_.scene.objects.empty())
    session_.scene = bench::demo_scene("cube", types::cube);
}

Session SessionService::snapshot() const {
  std::lock_guard lock(mutex_);
  return session_;
}

void SessionService::require_idle() const {
  if (solving_ > 0)
    throw Error(ErrorCode::StaleSnapshot, "a plan is being computed; retry when it is done");
}

PlanRecord SessionService::solve(const std::string &problem, const SearchConfig &config) {
  Session copy;
  {
    std::lock_guard lock(mutex_);
    copy = session_;
    ++solving_;
  }
  PlanRecord rec;
  try {
    rec = irp::solve(copy, problem, config);
  } catch (...) {
    std::lock_guard lock(mutex_);
    --solving_;
    throw;
  }
  std::lock_guard lock(mutex_);
  --solving_;
  rec.id = session_.next_plan_id++;
  session_.events.push_back("plan " + std::to_string(rec.id) + " for " + problem + " has " +
                            std::to_string(rec.plan.cost()) + " step(s)");
  session_.plans[rec.id] = rec;
  return rec;
}

void SessionService::begin_demo(PerceptionMode mode) {
  std::lock_guard lock(mutex_);
  require_idle();
  if (demo_)
    throw Error(ErrorCode::InvalidArgument, "a demonstration is already being recorded");
  demo_.emplace(session_.scene, session_.config, session_.domain.vocab, mode);
}

Keyframe SessionService::record_keyframe(Arm arm, const Pose &pose, Gripper gripper) {
  std::lock_guard lock(mutex_);
  if (!demo_)
    throw Error(ErrorCode::InvalidArgument, "no demonstration in progress");
  return demo_->record_keyframe(arm, pose, gripper);
}

HighLevelAction SessionService::finish_demo(const std::string &name) {
  std::lock_guard lock(mutex_);
  require_idle();
  if (!demo_)
    throw Error(ErrorCode::InvalidArgument, "no demonstration in progress");
  const DemoResult result = demo_->finish(name);
  HighLevelAction a = teach_action(session_, name, result);
  session_.scene = result.scene_after;
  demo_.reset();
  return a;
}

bool SessionService::demo_active() const {
  std::lock_guard lock(mutex_);
  return demo_.has_value();
}

std::optional<Scene> SessionService::demo_scene() const {
  std::lock_guard lock(mutex_);
  if (!demo_)
    return std::nullopt;
  return demo_->current_scene();
}

void SessionService::replace(Session session) {
  std::lock_guard lock(mutex_);
  require_idle();
  session_ = std::move(session);
  demo_.reset();
}

Scene random_scene(uint64_t seed, int objects, int npos, bool mixed,
                   const WorkbenchConfig &config) {
  if (objects < 0 || npos < 1 || npos > 4)
    throw Error(ErrorCode::InvalidArgument, "need 1..4 positions and a non-negative object count");
  std::mt19937_64 rng(seed);
  const TypeHierarchy h = TypeHierarchy::builtin();
  Scene s;
  auto all = bench::positions();
  s.positions.assign(all.begin(), all.begin() + npos);
  // Top object id of each position's stack, or empty.
  std::vector<std::string> top(npos);
  const std::vector<TypeTag> kinds =
      mixed ? std::vector<TypeTag>{types::base, types::cube, types::roof}
            : std::vector<TypeTag>{types::cube};
  int counter[3] = {0, 0, 0};
  for (int i = 0; i < objects; ++i) {
    const size_t k = std::uniform_int_distribution<size_t>(0, kinds.size() - 1)(rng);
    const TypeTag type = kinds[k];
    const std::string id = type.name.substr(0, 1) + std::to_string(++counter[k]);
    std::vector<int> options;
    for (int p = 0; p < npos; ++p) {
      if (top[p].empty())
        options.push_back(p);
      else if (config.stackable.allows(h, type, s.find_object(top[p])->type))
        options.push_back(p);
    }
    if (options.empty())
      continue;
    const int p = options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
    if (top[p].empty())
      s.objects.push_back(bench::object_at(id, type, s.positions[p].id));
    else
      s.objects.push_back(bench::object_on(id, type, *s.find_object(top[p])));
    top[p] = id;
  }
  return s;
}

} // namespace irp
