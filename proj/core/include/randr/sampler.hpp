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

#include <cstdint>
#include <variant>
#include <vector>

#include "randr/scene.hpp"
#include "randr/seed.hpp"
#include "randr/texture.hpp"

namespace randr {

/// Camera fixed at a configured pose for every scene. Built from an eye
/// and target by default (downward view of the grid).
struct FixedCamera {
  Pose pose = look_at(Vec3{0.0, -2.5, 2.0}, Vec3::Zero());

  static FixedCamera looking(const Vec3& eye, const Vec3& target) {
    return FixedCamera{look_at(eye, target)};
  }
};

/// Camera eye drawn from a spherical shell sector around the grid center,
/// always looking at the grid center.
struct MovingCamera {
  Range radius{1.5, 3.5};
  Range elevation{0.25, 1.25};  // above the ground plane, radians
  Range azimuth{0.0, 6.283185307179586};
};

using CameraMode = std::variant<FixedCamera, MovingCamera>;

struct LightConfig {
  bool moves = true;
  MovingCamera shell;  // same shell law as the moving camera
  Vec3 fixed_position{1.0, -1.0, 3.0};
  Range intensity{0.7, 1.3};
  double ambient = 0.25;
};

struct SamplerConfig {
  int min_count = 2;
  int max_count = 7;
  int rows = 3;
  int cols = 3;
  double cell_size = 0.85;        // meters
  double jitter_fraction = 0.15;  // of cell_size, [0, 0.5)

  Range box_edge{0.1, 0.4};
  Range cylinder_radius{0.05, 0.15};
  Range cylinder_length{0.1, 0.4};
  Range sphere_radius{0.05, 0.2};

  CameraMode camera = MovingCamera{};
  double horizontal_fov = 1.2;
  int image_width = 1920;
  int image_height = 1080;

  LightConfig light;

  int texture_count = 500;  // object/ground texture ids drawn from [0, texture_count)

  /// Largest footprint any sampled object can have.
  double max_footprint() const;
  Vec3 grid_center() const { return Vec3::Zero(); }
  Vec3 cell_center(GridCell cell) const;

  /// Throws ValidationError. Enforces min_count <= max_count <= rows*cols
  /// and max_footprint() <= cell_size * (1 - 2 * jitter_fraction).
  void validate() const;
};

/// n distinct cells of a rows x cols grid, uniform without replacement.
/// Throws TooManyObjects when n > rows * cols.
std::vector<GridCell> sample_grid_cells(int n, int rows, int cols, Rng& rng);

/// Fixed mode returns the configured pose verbatim; moving mode samples an
/// eye in the shell and aims it at grid_center.
Pose sample_camera(const CameraMode& mode, const Vec3& grid_center, Rng& rng);

/// Pure function of (config, master_seed, scene_index). Validates config
/// first (ValidationError).
SceneSpec sample_scene(const SamplerConfig& config, std::uint64_t master_seed,
                       std::int64_t scene_index);

}  // namespace randr
