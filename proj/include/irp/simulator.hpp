#pragma once

#include "irp/config.hpp"
#include "irp/geometry.hpp"
#include "irp/scene.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irp {

// Purely kinematic tabletop: grippers teleport between poses, grasped objects
// (and anything stacked on them) follow the gripper, released objects drop
// onto the highest support below their centre.
class KinematicSim {
public:
  KinematicSim(Scene scene, WorkbenchConfig config);

  const Scene &scene() const { return scene_; }
  const Pose &gripper(Arm arm) const;
  bool holding(Arm arm) const { return scene_.held.count(arm) != 0; }

  void move_to(Arm arm, const Pose &pose);
  // Grasps the nearest free object whose centre is within the grasp radius.
  // Returns the held id, or nullopt when nothing is in reach.
  std::optional<std::string> close(Arm arm);
  void open(Arm arm);

private:
  std::vector<std::string> riders_of(const std::string &id) const;
  void attach(Arm arm, const std::string &id);

  Scene scene_;
  WorkbenchConfig config_;
  std::map<Arm, Pose> gripper_;
  // Arm -> (object id, offset from gripper position). First entry is the
  // grasped object, the rest ride on it.
  std::map<Arm, std::vector<std::pair<std::string, Vec3>>> carried_;
};

} // namespace irp
