#pragma once

#include <cmath>
#include <vector>

namespace irp {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3 &) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double horizontal_distance(const Vec3 &o) const {
    return std::hypot(x - o.x, y - o.y);
  }
};

inline double distance(const Vec3 &a, const Vec3 &b) { return (a - b).norm(); }

// Unit quaternion, (w, x, y, z) order.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Quat &) const = default;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quat normalized() const;
  Quat conjugate() const { return {w, -x, -y, -z}; }
  Quat operator*(const Quat &o) const;
  Vec3 rotate(const Vec3 &v) const;
};

struct Pose {
  Vec3 position;
  Quat orientation;

  bool operator==(const Pose &) const = default;

  // Maps a pose expressed in this frame into the parent frame.
  Pose compose(const Pose &local) const;
  Pose inverse() const;
};

// Expresses `world` relative to `frame` (both in world coordinates).
Pose to_frame(const Pose &frame, const Pose &world);
// Inverse of to_frame.
Pose from_frame(const Pose &frame, const Pose &local);

Quat slerp(const Quat &a, const Quat &b, double t);
Pose interpolate(const Pose &a, const Pose &b, double t);
// `steps` evenly spaced samples on the segment, excluding `a`, including `b`.
std::vector<Pose> interpolate_segment(const Pose &a, const Pose &b, int steps);

} // namespace irp
