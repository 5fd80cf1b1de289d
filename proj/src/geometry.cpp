#include "irp/geometry.hpp"

#include <algorithm>

namespace irp {

Quat Quat::normalized() const {
  const double n = norm();
  if (n == 0.0)
    return {};
  return {w / n, x / n, y / n, z / n};
}

Quat Quat::operator*(const Quat &o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z,
          w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x,
          w * o.z + x * o.y - y * o.x + z * o.w};
}

Vec3 Quat::rotate(const Vec3 &v) const {
  const Quat p{0.0, v.x, v.y, v.z};
  const Quat r = (*this) * p * conjugate();
  return {r.x, r.y, r.z};
}

Pose Pose::compose(const Pose &local) const {
  return {position + orientation.rotate(local.position),
          (orientation * local.orientation).normalized()};
}

Pose Pose::inverse() const {
  const Quat inv = orientation.conjugate();
  return {inv.rotate(position * -1.0), inv};
}

Pose to_frame(const Pose &frame, const Pose &world) {
  return frame.inverse().compose(world);
}

Pose from_frame(const Pose &frame, const Pose &local) {
  return frame.compose(local);
}

Quat slerp(const Quat &a, const Quat &b, double t) {
  Quat end = b;
  double dot = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  if (dot < 0.0) {
    end = {-b.w, -b.x, -b.y, -b.z};
    dot = -dot;
  }
  if (dot > 0.9995) {
    Quat lerp{a.w + t * (end.w - a.w), a.x + t * (end.x - a.x),
              a.y + t * (end.y - a.y), a.z + t * (end.z - a.z)};
    return lerp.normalized();
  }
  const double theta = std::acos(std::clamp(dot, -1.0, 1.0));
  const double s = std::sin(theta);
  const double wa = std::sin((1.0 - t) * theta) / s;
  const double wb = std::sin(t * theta) / s;
  return Quat{wa * a.w + wb * end.w, wa * a.x + wb * end.x,
              wa * a.y + wb * end.y, wa * a.z + wb * end.z}
      .normalized();
}

Pose interpolate(const Pose &a, const Pose &b, double t) {
  return {a.position + (b.position - a.position) * t,
          slerp(a.orientation, b.orientation, t)};
}

std::vector<Pose> interpolate_segment(const Pose &a, const Pose &b, int steps) {
  std::vector<Pose> out;
  if (steps <= 0)
    return out;
  out.reserve(steps);
  for (int i = 1; i <= steps; ++i)
    out.push_back(interpolate(a, b, static_cast<double>(i) / steps));
  return out;
}

} // namespace irp
