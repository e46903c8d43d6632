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

#pragma once

#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace randr {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// World frame: z-up, ground plane z = 0.
inline const Vec3 kWorldUp{0.0, 0.0, 1.0};

/// Rigid placement. Orientation maps body-frame vectors to world frame and
/// is kept unit-norm by every constructor.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  Pose() = default;
  Pose(const Vec3& p, const Quat& q) : position(p), orientation(q.normalized()) {}

  /// Pose rotated about world z by `yaw` radians.
  static Pose from_yaw(const Vec3& p, double yaw);

  Vec3 to_world(const Vec3& local) const { return orientation * local + position; }
  Vec3 to_local(const Vec3& world) const {
    return orientation.conjugate() * (world - position);
  }

  friend bool operator==(const Pose& a, const Pose& b) {
    return a.position == b.position && a.orientation.coeffs() == b.orientation.coeffs();
  }
};

/// Camera pose looking from `eye` at `target`.
///
/// Camera body frame: +z forward (optical axis), +x right, +y down, so image
/// u grows with +x and v with +y. Throws DegenerateLookAt when eye and
/// target coincide or `up_hint` is parallel to the viewing direction.
Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up_hint = kWorldUp);

/// Pinhole camera with square pixels and the principal point at the image
/// center. No distortion.
struct CameraModel {
  Pose pose;
  double horizontal_fov = 1.2;  // radians
  int width = 1920;
  int height = 1080;

  double focal_px() const;
  Vec2 principal_point() const { return {0.5 * width, 0.5 * height}; }
  Vec3 forward() const { return pose.orientation * Vec3::UnitZ(); }

  /// Unit direction (world frame) through image position (u, v).
  Vec3 ray_direction(double u, double v) const;

  /// Same pose and field of view at 1/factor the resolution.
  CameraModel downscaled(int factor) const;

  /// Throws ValidationError on fov outside (0, pi) or non-positive size.
  void validate() const;
};

/// Pinhole projection of a world point to pixel coordinates; nullopt when
/// the point has non-positive depth (behind the camera).
std::optional<Vec2> project(const CameraModel& camera, const Vec3& point);

}  // namespace randr
