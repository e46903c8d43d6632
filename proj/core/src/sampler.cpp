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

#include "randr/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "randr/errors.hpp"

namespace randr {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("sampler: " + what);
}

void validate_range(const Range& r, const std::string& name, bool positive) {
  require(std::isfinite(r.min) && std::isfinite(r.max), name + " must be finite");
  require(r.valid(), name + " needs min <= max");
  if (positive) require(r.min > 0.0, name + " must be positive");
}

void validate_shell(const MovingCamera& shell, const std::string& name) {
  validate_range(shell.radius, name + ".radius", true);
  validate_range(shell.elevation, name + ".elevation", false);
  validate_range(shell.azimuth, name + ".azimuth", false);
  // Stay strictly above the ground and away from the zenith, where look-at
  // with a z-up hint degenerates.
  require(shell.elevation.min > 0.0 && shell.elevation.max < 0.5 * std::numbers::pi - 1e-3,
          name + ".elevation must lie in (0, pi/2)");
}

Vec3 sample_shell(const MovingCamera& shell, const Vec3& center, Rng& rng) {
  const double r = shell.radius.sample(rng);
  const double elevation = shell.elevation.sample(rng);
  const double azimuth = shell.azimuth.sample(rng);
  return center + r * Vec3(std::cos(elevation) * std::cos(azimuth),
                           std::cos(elevation) * std::sin(azimuth), std::sin(elevation));
}

}  // namespace

double SamplerConfig::max_footprint() const {
  return std::max({footprint_diameter(ShapeClass::Box, Vec3(box_edge.max, box_edge.max, 1.0)),
                   2.0 * cylinder_radius.max, 2.0 * sphere_radius.max});
}

Vec3 SamplerConfig::cell_center(GridCell cell) const {
  return {(cell.col - 0.5 * (cols - 1)) * cell_size, (cell.row - 0.5 * (rows - 1)) * cell_size,
          0.0};
}

void SamplerConfig::validate() const {
  require(rows >= 1 && cols >= 1, "grid rows and cols must be positive");
  require(min_count >= 1, "min_count must be at least 1");
  require(min_count <= max_count, "min_count must not exceed max_count");
  require(max_count <= rows * cols, "max_count " + std::to_string(max_count) +
                                        " exceeds grid capacity " + std::to_string(rows * cols));
  require(std::isfinite(cell_size) && cell_size > 0.0, "cell_size must be positive");
  require(jitter_fraction >= 0.0 && jitter_fraction < 0.5, "jitter_fraction must lie in [0, 0.5)");
  validate_range(box_edge, "box_edge", true);
  validate_range(cylinder_radius, "cylinder_radius", true);
  validate_range(cylinder_length, "cylinder_length", true);
  validate_range(sphere_radius, "sphere_radius", true);
  require(max_footprint() <= cell_size * (1.0 - 2.0 * jitter_fraction),
          "largest object footprint does not fit a jittered grid cell");

  std::visit(Overloaded{
                 [](const FixedCamera& fixed) {
                   require(std::abs(fixed.pose.orientation.norm() - 1.0) < 1e-9,
                           "fixed camera orientation must be a unit quaternion");
                 },
                 [](const MovingCamera& moving) { validate_shell(moving, "camera"); },
             },
             camera);
  CameraModel{Pose{}, horizontal_fov, image_width, image_height}.validate();

  if (light.moves) validate_shell(light.shell, "light");
  require(light.fixed_position.allFinite(), "light.fixed_position must be finite");
  validate_range(light.intensity, "light.intensity", true);
  require(light.intensity.max <= 2.0, "light.intensity must lie in (0, 2]");
  require(light.ambient >= 0.0 && light.ambient <= 1.0, "light.ambient must lie in [0, 1]");
  require(texture_count >= 1, "texture_count must be at least 1");
}

std::vector<GridCell> sample_grid_cells(int n, int rows, int cols, Rng& rng) {
  const int total = rows * cols;
  if (n > total) {
    throw TooManyObjects(std::to_string(n) + " objects do not fit a " + std::to_string(rows) +
                         "x" + std::to_string(cols) + " grid");
  }
  if (n <= 0) return {};
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::vector<GridCell> cells;
  cells.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i, total - 1));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
    const int idx = order[static_cast<std::size_t>(i)];
    cells.push_back({idx / cols, idx % cols});
  }
  return cells;
}

Pose sample_camera(const CameraMode& mode, const Vec3& grid_center, Rng& rng) {
  return std::visit(Overloaded{
                        [](const FixedCamera& fixed) { return fixed.pose; },
                        [&](const MovingCamera& moving) {
                          return look_at(sample_shell(moving, grid_center, rng), grid_center);
                        },
                    },
                    mode);
}

SceneSpec sample_scene(const SamplerConfig& config, std::uint64_t master_seed,
                       std::int64_t scene_index) {
  config.validate();
  SceneSpec scene;
  scene.scene_index = scene_index;
  scene.seed = derived_seed(master_seed, static_cast<std::uint64_t>(scene_index));
  Rng rng(scene.seed);

  const int n = static_cast<int>(rng.uniform_int(config.min_count, config.max_count));
  scene.cells = sample_grid_cells(n, config.rows, config.cols, rng);
  const double jitter = config.jitter_fraction * config.cell_size;

  scene.objects.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    ObjectInstance obj;
    obj.id = k;
    obj.shape = static_cast<ShapeClass>(rng.uniform_int(0, 2));
    double half_height = 0.0;
    switch (obj.shape) {
      case ShapeClass::Box: {
        const double w = config.box_edge.sample(rng);
        const double d = config.box_edge.sample(rng);
        const double h = config.box_edge.sample(rng);
        obj.dims = Vec3(w, d, h);
        half_height = 0.5 * h;
        break;
      }
      case ShapeClass::Cylinder: {
        const double r = config.cylinder_radius.sample(rng);
        const double len = config.cylinder_length.sample(rng);
        obj.dims = Vec3(r, r, len);
        half_height = 0.5 * len;
        break;
      }
      case ShapeClass::Sphere: {
        const double r = config.sphere_radius.sample(rng);
        obj.dims = Vec3(r, r, r);
        half_height = r;
        break;
      }
    }
    const double yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double jx = rng.uniform(-jitter, jitter);
    const double jy = rng.uniform(-jitter, jitter);
    Vec3 position = config.cell_center(scene.cells[static_cast<std::size_t>(k)]);
    position += Vec3(jx, jy, half_height);
    obj.pose = Pose::from_yaw(position, yaw);
    obj.texture_id = static_cast<int>(rng.uniform_int(0, config.texture_count - 1));
    scene.objects.push_back(obj);
  }
  scene.ground_texture_id = static_cast<int>(rng.uniform_int(0, config.texture_count - 1));

  scene.camera.pose = sample_camera(config.camera, config.grid_center(), rng);
  scene.camera.horizontal_fov = config.horizontal_fov;
  scene.camera.width = config.image_width;
  scene.camera.height = config.image_height;

  scene.light.position = config.light.moves
                             ? sample_shell(config.light.shell, config.grid_center(), rng)
                             : config.light.fixed_position;
  scene.light.intensity = config.light.intensity.sample(rng);
  scene.light.ambient = config.light.ambient;
  return scene;
}

}  // namespace randr
