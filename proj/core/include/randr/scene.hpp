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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "randr/geometry.hpp"

namespace randr {

enum class ShapeClass : std::uint8_t { Box = 0, Cylinder = 1, Sphere = 2 };

inline constexpr std::array<ShapeClass, 3> kShapeClasses{ShapeClass::Box, ShapeClass::Cylinder,
                                                          ShapeClass::Sphere};

inline constexpr int class_code(ShapeClass c) { return static_cast<int>(c); }
std::string_view to_string(ShapeClass c);
std::optional<ShapeClass> parse_shape_class(std::string_view name);
std::optional<ShapeClass> shape_class_from_code(int code);

/// One shape primitive placed in the scene.
///
/// `pose.position` is the geometric center. dims are meters:
/// box (width, depth, height); cylinder (radius, radius, length) with the
/// axis along body z; sphere (radius, radius, radius).
struct ObjectInstance {
  int id = 0;
  ShapeClass shape = ShapeClass::Box;
  Pose pose;
  Vec3 dims = Vec3::Ones();
  int texture_id = 0;

  /// Lowest world z of the shape, for the rests-on-ground invariant.
  /// Exact for upright poses (yaw-only), which is all the sampler emits.
  double min_z() const;

  /// Radius of the circle circumscribing the ground footprint.
  double footprint_radius() const;

  /// Radius of a sphere around pose.position enclosing the shape.
  double bounding_radius() const;

  /// Throws ValidationError on non-positive or inconsistent dims.
  void validate() const;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

/// Footprint diameter bound for a class given its dims; box uses the
/// footprint diagonal so any yaw stays inside.
double footprint_diameter(ShapeClass shape, const Vec3& dims);

struct LightSource {
  Vec3 position{0.0, 0.0, 3.0};
  double intensity = 1.0;  // (0, 2]
  double ambient = 0.25;   // [0, 1]

  friend bool operator==(const LightSource&, const LightSource&) = default;
};

/// Grid cell occupied by an object.
struct GridCell {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Declarative description of one randomized scene.
struct SceneSpec {
  std::int64_t scene_index = 0;
  std::uint64_t seed = 0;
  std::vector<ObjectInstance> objects;
  std::vector<GridCell> cells;  // parallel to objects
  CameraModel camera;
  LightSource light;
  int ground_texture_id = 0;
};

bool operator==(const CameraModel& a, const CameraModel& b);
bool operator==(const SceneSpec& a, const SceneSpec& b);

}  // namespace randr
