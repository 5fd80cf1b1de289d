#include "irp/demonstration.hpp"

#include "irp/error.hpp"

#include <algorithm>
#include <cmath>

namespace irp {

const char *to_string(Gripper g) { return g == Gripper::Open ? "open" : "close"; }

Gripper gripper_from_string(const std::string &name) {
  if (name == "open")
    return Gripper::Open;
  if (name == "close")
    return Gripper::Close;
  throw Error(ErrorCode::InvalidArgument, "unknown gripper state '" + name + "'");
}

Arm LowLevelAction::arm() const {
  if (keyframes.empty())
    throw Error(ErrorCode::EmptyDemonstration, "action '" + name + "' has no keyframes");
  return keyframes.front().arm;
}

std::set<std::string> LowLevelAction::landmark_ids() const {
  std::set<std::string> out;
  for (const auto &k : keyframes)
    if (k.frame.landmark)
      out.insert(k.frame.landmark->original_id);
  return out;
}

void LowLevelAction::validate() const {
  if (keyframes.empty())
    throw Error(ErrorCode::EmptyDemonstration, "action '" + name + "' has no keyframes");
  for (const auto &k : keyframes) {
    if (k.arm != keyframes.front().arm)
      throw Error(ErrorCode::InvalidArgument, "action '" + name + "' mixes arms");
    if (std::abs(k.pose.orientation.norm() - 1.0) > 1e-9)
      throw Error(ErrorCode::InvalidArgument, "action '" + name + "' has a non-unit quaternion");
    const bool is_landmark = k.frame.kind == FrameRef::Kind::Landmark;
    if (is_landmark != k.frame.landmark.has_value())
      throw Error(ErrorCode::InvalidArgument,
                  "action '" + name + "' has a frame without matching descriptor");
  }
}

Landmark landmark_of(const ObjectInstance &o) {
  return {o.id, o.type, o.dims, Pose{o.top(), {}}, o.center()};
}

Landmark landmark_of(const PositionInstance &p) {
  return {p.id, types::position, {}, Pose{p.point(), {}}, p.point()};
}

std::vector<Landmark> scene_landmarks(const Scene &scene) {
  std::vector<Landmark> out;
  for (const auto &p : scene.positions)
    out.push_back(landmark_of(p));
  for (const auto &o : scene.objects)
    if (!scene.is_held(o.id))
      out.push_back(landmark_of(o));
  std::sort(out.begin(), out.end(),
            [](const Landmark &a, const Landmark &b) { return a.id < b.id; });
  return out;
}

DemoSession::DemoSession(Scene scene, WorkbenchConfig config, Vocabulary vocab,
                         PerceptionMode mode)
    : scene_before_(std::move(scene)), config_(std::move(config)), vocab_(std::move(vocab)),
      mode_(mode), o1_(perceive(scene_before_, config_, vocab_, mode_)),
      sim_(scene_before_, config_) {}

DemoSession begin_demo(const Scene &scene, const WorkbenchConfig &config, const Vocabulary &vocab,
                       PerceptionMode mode) {
  return DemoSession(scene, config, vocab, mode);
}

const Keyframe &DemoSession::record_keyframe(Arm arm, const Pose &world_pose, Gripper gripper) {
  if (!config_.workspace.contains(world_pose.position))
    throw Error(ErrorCode::OutOfWorkspace, "keyframe position is outside the table workspace");
  if (!recorded_.empty() && recorded_.front().arm != arm)
    throw Error(ErrorCode::InvalidArgument, "a demonstration uses a single arm");
  const Pose pose{world_pose.position, world_pose.orientation.normalized()};

  sim_.move_to(arm, pose);
  auto marks = scene_landmarks(sim_.scene());
  const Landmark *best = nullptr;
  double best_dist = 0.0;
  for (const auto &l : marks) {
    const double dist = distance(pose.position, l.center);
    if (dist > config_.frame_radius)
      continue;
    if (!best || dist < best_dist) {
      best = &l;
      best_dist = dist;
    }
  }
  Keyframe k;
  k.arm = arm;
  k.gripper = gripper;
  if (best) {
    k.frame = FrameRef::on({best->type, best->dims, best->id});
    k.pose = to_frame(best->frame, pose);
  } else {
    k.pose = pose;
  }
  recorded_.push_back(k);
  world_poses_.push_back(pose);
  landmarks_at_.push_back(std::move(marks));

  if (gripper == Gripper::Close)
    sim_.close(arm);
  else
    sim_.open(arm);
  return recorded_.back();
}

void DemoSession::reassign_frame(size_t index, const std::optional<std::string> &landmark_id) {
  if (index >= recorded_.size())
    throw Error(ErrorCode::NotFound, "no keyframe " + std::to_string(index));
  Keyframe &k = recorded_[index];
  const Pose &world = world_poses_[index];
  if (!landmark_id) {
    k.frame = FrameRef::base();
    k.pose = world;
    return;
  }
  for (const auto &l : landmarks_at_[index]) {
    if (l.id == *landmark_id) {
      k.frame = FrameRef::on({l.type, l.dims, l.id});
      k.pose = to_frame(l.frame, world);
      return;
    }
  }
  throw Error(ErrorCode::NotFound, "landmark '" + *landmark_id + "' was not visible at keyframe " +
                                       std::to_string(index));
}

DemoResult DemoSession::finish(const std::string &name) const {
  return finish(name, sim_.scene());
}

DemoResult DemoSession::finish(const std::string &name, const Scene &scene_after) const {
  if (recorded_.empty())
    throw Error(ErrorCode::EmptyDemonstration, "no keyframes were recorded");
  DemoResult r;
  r.action = LowLevelAction{name, recorded_};
  r.o1 = o1_;
  r.o2 = perceive(scene_after, config_, vocab_, mode_);
  r.scene_after = scene_after;
  return r;
}

DemoResult run_demo_script(const DemoScript &script, const Scene &scene,
                           const WorkbenchConfig &config, const Vocabulary &vocab) {
  auto keyframes = script.keyframes;
  std::stable_sort(keyframes.begin(), keyframes.end(),
                   [](const ScriptedKeyframe &a, const ScriptedKeyframe &b) { return a.t < b.t; });
  DemoSession session(scene, config, vocab);
  for (size_t i = 0; i < keyframes.size(); ++i) {
    const auto &k = keyframes[i];
    session.record_keyframe(k.arm, k.pose, k.gripper);
    if (k.frame == "base")
      session.reassign_frame(i, std::nullopt);
    else if (!k.frame.empty())
      session.reassign_frame(i, k.frame);
  }
  return session.finish(script.name);
}

namespace {

Pose resolve_landmark(const LandmarkDescriptor &d, const Scene &scene,
                      const std::map<std::string, std::string> &bindings,
                      const std::map<std::string, Vec3> *believed) {
  auto frame_for = [&](const std::string &id) -> std::optional<Pose> {
    if (const auto *p = scene.find_position(id))
      return landmark_of(*p).frame;
    if (const auto *o = scene.find_object(id)) {
      ObjectInstance copy = *o;
      if (believed) {
        auto it = believed->find(id);
        if (it != believed->end())
          copy.pose = it->second;
      }
      return landmark_of(copy).frame;
    }
    return std::nullopt;
  };

  if (auto it = bindings.find(d.original_id); it != bindings.end()) {
    if (auto f = frame_for(it->second))
      return *f;
    throw Error(ErrorCode::UnresolvedLandmark, "landmark '" + d.original_id + "' is bound to '" +
                                                   it->second + "', which is not in the scene");
  }

  std::string best;
  double best_dist = 0.0;
  auto consider = [&](const std::string &id, const Vec3 &dims) {
    const double dist = distance(dims, d.dims);
    if (best.empty() || dist < best_dist || (dist == best_dist && id < best)) {
      best = id;
      best_dist = dist;
    }
  };
  if (d.type == types::position) {
    for (const auto &p : scene.positions)
      consider(p.id, {});
  } else {
    for (const auto &o : scene.objects)
      if (o.type == d.type)
        consider(o.id, o.dims);
  }
  if (best.empty())
    throw Error(ErrorCode::UnresolvedLandmark,
                "no " + d.type.name + " in the scene for landmark '" + d.original_id + "'");
  return *frame_for(best);
}

} // namespace

std::vector<Pose> resolve_keyframes(const LowLevelAction &action, const Scene &scene,
                                    const std::map<std::string, std::string> &bindings,
                                    const std::map<std::string, Vec3> *believed_poses) {
  action.validate();
  std::vector<Pose> out;
  out.reserve(action.keyframes.size());
  for (const auto &k : action.keyframes) {
    if (k.frame.kind == FrameRef::Kind::Base)
      out.push_back(k.pose);
    else
      out.push_back(
          from_frame(resolve_landmark(*k.frame.landmark, scene, bindings, believed_poses), k.pose));
  }
  return out;
}

Scene execute_low_level(const LowLevelAction &action, const Scene &scene,
                        const std::map<std::string, std::string> &bindings,
                        const WorkbenchConfig &config,
                        const std::map<std::string, Vec3> *believed_poses, ExecutionTrace *trace) {
  const auto poses = resolve_keyframes(action, scene, bindings, believed_poses);
  KinematicSim sim(scene, config);
  const Arm arm = action.arm();
  constexpr int kSamplesPerSegment = 10;
  for (size_t i = 0; i < poses.size(); ++i) {
    if (trace) {
      for (const auto &p : interpolate_segment(sim.gripper(arm), poses[i], kSamplesPerSegment))
        trace->samples.emplace_back(arm, p);
    }
    sim.move_to(arm, poses[i]);
    if (action.keyframes[i].gripper == Gripper::Close) {
      if (!sim.close(arm))
        throw Error(ErrorCode::GraspFailed, "keyframe " + std::to_string(i) + " of '" +
                                                action.name + "' closes on nothing");
    } else {
      sim.open(arm);
    }
  }
  return sim.scene();
}

} // namespace irp
