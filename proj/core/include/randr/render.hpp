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
#include <optional>
#include <span>
#include <vector>

#include "randr/geometry.hpp"
#include "randr/image.hpp"
#include "randr/scene.hpp"
#include "randr/texture.hpp"

namespace randr {

inline constexpr std::int32_t kBackgroundId = -1;
inline constexpr std::int32_t kGroundId = -2;

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();  // unit length
};

struct Hit {
  double t = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // unit, faces the ray origin
  std::int32_t object_id = kGroundId;
  Vec2 uv = Vec2::Zero();
};

/// Render-side state of one shape: the instance plus its cached body
/// transform and bound. Slots are rebound in place between scenes.
///
/// UV mappings: sphere equirectangular over (azimuth, polar angle);
/// cylinder (azimuth, height) on the side and planar on the caps; box
/// planar per face over the two in-face body axes.
class RenderObject {
 public:
  RenderObject() = default;
  RenderObject(const ObjectInstance& object, const TextureImage* texture) {
    bind(object, texture);
  }

  /// Moves/morphs the slot to `object` and binds its texture.
  void bind(const ObjectInstance& object, const TextureImage* texture);

  /// Parks the slot below the ground plane, out of every camera's view.
  void park();

  bool active() const { return active_; }
  const ObjectInstance& object() const { return object_; }
  const TextureImage* texture() const { return texture_; }

  /// Nearest hit with t >= 0, nullopt on miss.
  std::optional<Hit> intersect(const Ray& ray) const;

  /// Cheap conservative rejection: false only if the ray cannot hit the
  /// shape at any t in [0, t_max].
  bool may_hit(const Ray& ray, double t_max) const;

 private:
  ObjectInstance object_;
  const TextureImage* texture_ = nullptr;
  Eigen::Matrix3d world_from_body_ = Eigen::Matrix3d::Identity();
  double bound_radius_ = 0.0;
  bool active_ = false;
};

/// Analytic ray/shape intersection for a single instance.
std::optional<Hit> intersect(const Ray& ray, const ObjectInstance& object);

/// Ray against the ground plane z = 0, seen from above. UVs tile every 2 m.
std::optional<Hit> intersect_ground(const Ray& ray);

/// Lambert shading with ambient term and one hard-shadow ray:
/// texel * (ambient + intensity * max(0, n.L) * visible), clamped to [0,1].
Rgb shade(const Hit& hit, const LightSource& light, const TextureImage& texture,
          std::span<const RenderObject* const> occluders);

/// True when a segment from `point` to the light is blocked by any occluder.
bool in_shadow(const Vec3& point, const Vec3& normal, const Vec3& light_position,
               std::span<const RenderObject* const> occluders);

/// Primary ray through the center of pixel (px, py).
Ray primary_ray(const CameraModel& camera, int px, int py);

struct RenderSettings {
  Rgb background{0.5f, 0.5f, 0.5f};
};

/// Everything the ray caster reads for one frame.
struct SceneView {
  CameraModel camera;
  LightSource light;
  std::vector<const RenderObject*> objects;
  const TextureImage* ground_texture = nullptr;
};

struct RenderOutput {
  ColorImage color;  // camera width x height, 3 channels
  IdMask id_mask;    // object id, kGroundId or kBackgroundId per pixel
};

/// One primary ray per pixel center; nearest hit wins, objects win ties
/// against the ground and lower ids win ties between objects. Rows are
/// split across workers; output does not depend on the worker count.
RenderOutput render(const SceneView& view, const RenderSettings& settings, unsigned workers);

/// Convenience wrapper building temporary render objects from a spec.
/// Throws BadTextureId when a texture id is outside the library.
RenderOutput render(const SceneSpec& scene, const TextureLibrary& library,
                    const RenderSettings& settings, unsigned workers);

}  // namespace randr
