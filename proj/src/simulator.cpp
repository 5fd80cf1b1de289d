#include "irp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace irp {

KinematicSim::KinematicSim(Scene scene, WorkbenchConfig config)
    : scene_(std::move(scene)), config_(std::move(config)) {
  gripper_[Arm::LeftClaw] = Pose{{0.3, 0.5, 0.4}, {}};
  gripper_[Arm::RightSuction] = Pose{{0.3, -0.5, 0.4}, {}};
  const auto held = scene_.held;
  for (const auto &[arm, id] : held) {
    if (const auto *o = scene_.find_object(id)) {
      gripper_[arm] = Pose{o->center(), {}};
      attach(arm, id);
    }
  }
}

const Pose &KinematicSim::gripper(Arm arm) const { return gripper_.at(arm); }

std::vector<std::string> KinematicSim::riders_of(const std::string &id) const {
  std::vector<std::string> out;
  std::set<std::string> seen{id};
  std::deque<std::string> queue{id};
  while (!queue.empty()) {
    const std::string base = queue.front();
    queue.pop_front();
    const auto *b = scene_.find_object(base);
    for (const auto &o : scene_.objects) {
      if (seen.count(o.id) || scene_.is_held(o.id))
        continue;
      if (std::abs(o.pose.z - b->top().z) <= config_.stack_tolerance &&
          o.pose.horizontal_distance(b->pose) <= config_.perception_threshold) {
        seen.insert(o.id);
        out.push_back(o.id);
        queue.push_back(o.id);
      }
    }
  }
  return out;
}

void KinematicSim::attach(Arm arm, const std::string &id) {
  const Vec3 g = gripper_.at(arm).position;
  auto riders = riders_of(id);
  scene_.held[arm] = id;
  auto &c = carried_[arm];
  c.clear();
  c.emplace_back(id, scene_.find_object(id)->pose - g);
  for (const auto &r : riders)
    c.emplace_back(r, scene_.find_object(r)->pose - g);
}

void KinematicSim::move_to(Arm arm, const Pose &pose) {
  gripper_[arm] = pose;
  auto it = carried_.find(arm);
  if (it == carried_.end())
    return;
  for (const auto &[id, offset] : it->second)
    scene_.find_object(id)->pose = pose.position + offset;
}

std::optional<std::string> KinematicSim::close(Arm arm) {
  if (holding(arm))
    return scene_.held.at(arm);
  std::set<std::string> busy;
  for (const auto &[a, list] : carried_)
    for (const auto &[id, off] : list)
      busy.insert(id);
  const Vec3 g = gripper_.at(arm).position;
  const ObjectInstance *best = nullptr;
  double best_dist = 0.0;
  for (const auto &o : scene_.objects) {
    if (busy.count(o.id))
      continue;
    const double dist = distance(g, o.center());
    if (dist > config_.grasp_radius)
      continue;
    if (!best || dist < best_dist || (dist == best_dist && o.id < best->id)) {
      best = &o;
      best_dist = dist;
    }
  }
  if (!best)
    return std::nullopt;
  const std::string id = best->id;
  attach(arm, id);
  return id;
}

void KinematicSim::open(Arm arm) {
  auto it = carried_.find(arm);
  if (it == carried_.end())
    return;
  const auto carried = std::move(it->second);
  carried_.erase(it);
  scene_.held.erase(arm);

  std::set<std::string> moving;
  for (const auto &[id, off] : carried)
    moving.insert(id);
  for (const auto &[a, list] : carried_)
    for (const auto &[id, off] : list)
      moving.insert(id);

  const ObjectInstance &dropped = *scene_.find_object(carried.front().first);
  const Vec3 c = dropped.center();
  double target = 0.0;
  std::string target_id;
  for (const auto &u : scene_.objects) {
    if (moving.count(u.id))
      continue;
    const double top = u.top().z;
    if (std::abs(c.x - u.pose.x) > u.dims.x / 2 || std::abs(c.y - u.pose.y) > u.dims.y / 2)
      continue;
    if (top > c.z)
      continue;
    if (top > target || (top == target && !target_id.empty() && u.id < target_id)) {
      target = top;
      target_id = u.id;
    }
  }
  const double dz = target - dropped.pose.z;
  for (const auto &[id, off] : carried)
    scene_.find_object(id)->pose.z += dz;
}

} // namespace irp
