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

#include "randr/scene.hpp"

#include <algorithm>
#include <cmath>

#include "randr/errors.hpp"

namespace randr {

std::string_view to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::Box:
      return "box";
    case ShapeClass::Cylinder:
      return "cylinder";
    case ShapeClass::Sphere:
      return "sphere";
  }
  return "unknown";
}

std::optional<ShapeClass> parse_shape_class(std::string_view name) {
  for (ShapeClass c : kShapeClasses) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<ShapeClass> shape_class_from_code(int code) {
  if (code < 0 || code > 2) return std::nullopt;
  return static_cast<ShapeClass>(code);
}

double ObjectInstance::min_z() const {
  // Lowest point of the body-frame shape under the pose rotation.
  const Eigen::Matrix3d r = pose.orientation.toRotationMatrix();
  switch (shape) {
    case ShapeClass::Sphere:
      return pose.position.z() - dims.x();
    case ShapeClass::Box: {
      const Vec3 h = 0.5 * dims;
      const double reach = std::abs(r(2, 0)) * h.x() + std::abs(r(2, 1)) * h.y() +
                           std::abs(r(2, 2)) * h.z();
      return pose.position.z() - reach;
    }
    case ShapeClass::Cylinder: {
      const Vec3 axis = r.col(2);
      const double axial = std::abs(axis.z()) * 0.5 * dims.z();
      const double radial = std::sqrt(std::max(0.0, 1.0 - axis.z() * axis.z())) * dims.x();
      return pose.position.z() - axial - radial;
    }
  }
  return pose.position.z();
}

double footprint_diameter(ShapeClass shape, const Vec3& dims) {
  switch (shape) {
    case ShapeClass::Box:
      return std::hypot(dims.x(), dims.y());
    case ShapeClass::Cylinder:
    case ShapeClass::Sphere:
      return 2.0 * dims.x();
  }
  return 0.0;
}

double ObjectInstance::footprint_radius() const { return 0.5 * footprint_diameter(shape, dims); }

double ObjectInstance::bounding_radius() const {
  switch (shape) {
    case ShapeClass::Sphere:
      return dims.x();
    case ShapeClass::Box:
      return 0.5 * dims.norm();
    case ShapeClass::Cylinder:
      return std::hypot(dims.x(), 0.5 * dims.z());
  }
  return 0.0;
}

void ObjectInstance::validate() const {
  if (!(dims.x() > 0.0 && dims.y() > 0.0 && dims.z() > 0.0)) {
    throw ValidationError("object " + std::to_string(id) + ": dims must be strictly positive");
  }
  if (shape != ShapeClass::Box && dims.x() != dims.y()) {
    throw ValidationError("object " + std::to_string(id) + ": round shapes need dims[0] == dims[1]");
  }
}

bool operator==(const CameraModel& a, const CameraModel& b) {
  return a.pose == b.pose && a.horizontal_fov == b.horizontal_fov && a.width == b.width &&
         a.height == b.height;
}

bool operator==(const SceneSpec& a, const SceneSpec& b) {
  return a.scene_index == b.scene_index && a.seed == b.seed && a.objects == b.objects &&
         a.cells == b.cells && a.camera == b.camera && a.light == b.light &&
         a.ground_texture_id == b.ground_texture_id;
}

}  // namespace randr
