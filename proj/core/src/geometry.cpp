// Copyright 2026 The randr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "randr/geometry.hpp"

#include <cmath>
#include <numbers>

#include "randr/errors.hpp"

namespace randr {

Pose Pose::from_yaw(const Vec3& p, double yaw) {
  return Pose(p, Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ())));
}

Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up_hint) {
  const Vec3 offset = target - eye;
  const double distance = offset.norm();
  if (!(distance > 1e-9)) throw DegenerateLookAt("look_at: eye and target coincide");
  const Vec3 forward = offset / distance;
  const double up_norm = up_hint.norm();
  if (!(up_norm > 0.0)) throw DegenerateLookAt("look_at: zero up hint");
  const Vec3 side = forward.cross(up_hint / up_norm);
  // |forward x up| = sin(angle between them).
  if (!(side.norm() > std::sin(1e-6))) {
    throw DegenerateLookAt("look_at: up hint parallel to viewing direction");
  }
  const Vec3 right = side.normalized();
  const Vec3 down = forward.cross(right);
  Eigen::Matrix3d world_from_camera;
  world_from_camera.col(0) = right;
  world_from_camera.col(1) = down;
  world_from_camera.col(2) = forward;
  return Pose(eye, Quat(world_from_camera));
}

double CameraModel::focal_px() const { return 0.5 * width / std::tan(0.5 * horizontal_fov); }

Vec3 CameraModel::ray_direction(double u, double v) const {
  const double f = focal_px();
  const Vec3 local((u - 0.5 * width) / f, (v - 0.5 * height) / f, 1.0);
  return (pose.orientation * local).normalized();
}

CameraModel CameraModel::downscaled(int factor) const {
  CameraModel out = *this;
  out.width = width / factor;
  out.height = height / factor;
  return out;
}

void CameraModel::validate() const {
  if (!(horizontal_fov > 0.0 && horizontal_fov < std::numbers::pi)) {
    throw ValidationError("camera: horizontal_fov must lie in (0, pi)");
  }
  if (width <= 0 || height <= 0) throw ValidationError("camera: width and height must be positive");
}

std::optional<Vec2> project(const CameraModel& camera, const Vec3& point) {
  const Vec3 local = camera.pose.to_local(point);
  if (!(local.z() > 0.0)) return std::nullopt;
  const double f = camera.focal_px();
  return Vec2(0.5 * camera.width + f * local.x() / local.z(),
              0.5 * camera.height + f * local.y() / local.z());
}

}  // namespace randr
