#pragma once

#include "irp/config.hpp"
#include "irp/geometry.hpp"
#include "irp/scene.hpp"
#include "irp/simulator.hpp"
#include "irp/world_state.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace irp {

enum class Gripper { Open, Close };

const char *to_string(Gripper g);
Gripper gripper_from_string(const std::string &name);

// What the demonstrator's landmark looked like; execution re-finds it by
// binding or by type and size, never by id alone.
struct LandmarkDescriptor {
  TypeTag type;
  Vec3 dims; // zero for positions
  std::string original_id;

  bool operator==(const LandmarkDescriptor &) const = default;
};

struct FrameRef {
  enum class Kind { Base, Landmark };

  Kind kind = Kind::Base;
  std::optional<LandmarkDescriptor> landmark;

  static FrameRef base() { return {}; }
  static FrameRef on(LandmarkDescriptor d) { return {Kind::Landmark, std::move(d)}; }
  bool operator==(const FrameRef &) const = default;
};

struct Keyframe {
  Arm arm = Arm::LeftClaw;
  Pose pose; // expressed in `frame`
  FrameRef frame;
  Gripper gripper = Gripper::Open;

  bool operator==(const Keyframe &) const = default;
};

struct LowLevelAction {
  std::string name;
  std::vector<Keyframe> keyframes;

  Arm arm() const;
  // Original ids of every landmark the keyframes are anchored to.
  std::set<std::string> landmark_ids() const;
  // Non-empty, single arm, unit quaternions, descriptor iff landmark frame.
  void validate() const;
  bool operator==(const LowLevelAction &) const = default;
};

// A perceived reference frame. Objects anchor at the centre of their top
// face, positions at their table point; `center` is what keyframe proximity
// is measured against.
struct Landmark {
  std::string id;
  TypeTag type;
  Vec3 dims;
  Pose frame;
  Vec3 center;
};

Landmark landmark_of(const ObjectInstance &o);
Landmark landmark_of(const PositionInstance &p);
// Free objects and all positions, sorted by id.
std::vector<Landmark> scene_landmarks(const Scene &scene);

struct DemoResult {
  LowLevelAction action;
  WorldState o1;
  WorldState o2;
  Scene scene_after;
};

// One teaching session. O1 is captured on construction and never refreshed;
// the recorded keyframes drive a simulator so the scene follows the demo.
class DemoSession {
public:
  DemoSession(Scene scene, WorkbenchConfig config, Vocabulary vocab,
              PerceptionMode mode = PerceptionMode::Full);

  const Scene &scene_before() const { return scene_before_; }
  const Scene &current_scene() const { return sim_.scene(); }
  const WorldState &o1() const { return o1_; }
  const std::vector<Keyframe> &recorded() const { return recorded_; }

  // Anchors the pose on the nearest landmark within frame_radius of its
  // position (ties: smallest id), else on the robot base; then applies the
  // gripper command to the simulated scene.
  const Keyframe &record_keyframe(Arm arm, const Pose &world_pose, Gripper gripper);
  // User correction: re-anchor keyframe `index` on `landmark_id`, or on the
  // base when nullopt. The landmark must have existed when it was recorded.
  void reassign_frame(size_t index, const std::optional<std::string> &landmark_id);

  DemoResult finish(const std::string &name) const;
  DemoResult finish(const std::string &name, const Scene &scene_after) const;

private:
  Scene scene_before_;
  WorkbenchConfig config_;
  Vocabulary vocab_;
  PerceptionMode mode_;
  WorldState o1_;
  KinematicSim sim_;
  std::vector<Keyframe> recorded_;
  std::vector<Pose> world_poses_;
  std::vector<std::vector<Landmark>> landmarks_at_;
};

DemoSession begin_demo(const Scene &scene, const WorkbenchConfig &config, const Vocabulary &vocab,
                       PerceptionMode mode = PerceptionMode::Full);

// Headless stand-in for kinesthetic teaching.
struct ScriptedKeyframe {
  double t = 0.0;
  Arm arm = Arm::LeftClaw;
  Pose pose; // world frame
  Gripper gripper = Gripper::Open;
  // "base", a landmark id, or empty for the automatic assignment.
  std::string frame;
};

struct DemoScript {
  std::string name;
  std::vector<ScriptedKeyframe> keyframes;
};

DemoResult run_demo_script(const DemoScript &script, const Scene &scene,
                           const WorkbenchConfig &config, const Vocabulary &vocab);

struct ExecutionTrace {
  std::vector<std::pair<Arm, Pose>> samples;
};

// Resolves each landmark keyframe (bindings first, then same type with the
// closest dims, ties by id), then replays the motion on a copy of `scene`.
// `believed_poses` overrides object poses used for resolution only.
Scene execute_low_level(const LowLevelAction &action, const Scene &scene,
                        const std::map<std::string, std::string> &bindings,
                        const WorkbenchConfig &config,
                        const std::map<std::string, Vec3> *believed_poses = nullptr,
                        ExecutionTrace *trace = nullptr);

// World poses the keyframes resolve to on `scene`; exposed for inspection.
std::vector<Pose> resolve_keyframes(const LowLevelAction &action, const Scene &scene,
                                    const std::map<std::string, std::string> &bindings,
                                    const std::map<std::string, Vec3> *believed_poses = nullptr);

} // namespace irp
