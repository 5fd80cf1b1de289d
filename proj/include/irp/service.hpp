#pragma once

#include "irp/session.hpp"

#include <cstdint>
#include <mutex>
#include <optional>

namespace irp {

// Single-writer front end for one session. Mutations serialize on a mutex;
// planning runs on a copy, and mutations that arrive while a solve is in
// flight are refused with StaleSnapshot.
class SessionService {
public:
  explicit SessionService(Session session = {});

  Session snapshot() const;

  template <class F> auto read(F &&f) const {
    std::lock_guard lock(mutex_);
    return f(static_cast<const Session &>(session_));
  }

  template <class F> auto mutate(F &&f) {
    std::lock_guard lock(mutex_);
    require_idle();
    return f(session_);
  }

  PlanRecord solve(const std::string &problem, const SearchConfig &config);

  // Demonstrations run on the session's current scene.
  void begin_demo(PerceptionMode mode = PerceptionMode::Full);
  Keyframe record_keyframe(Arm arm, const Pose &pose, Gripper gripper);
  HighLevelAction finish_demo(const std::string &name);
  bool demo_active() const;
  std::optional<Scene> demo_scene() const;

  void replace(Session session);

private:
  void require_idle() const;

  mutable std::mutex mutex_;
  Session session_;
  std::optional<DemoSession> demo_;
  int solving_ = 0;
};

// Random stacks over the first `positions` marked positions, obeying the
// stacking rules. `mixed` draws base/cube/roof instead of cubes only.
Scene random_scene(uint64_t seed, int objects, int positions, bool mixed,
                   const WorkbenchConfig &config = WorkbenchConfig::defaults());

} // namespace irp
