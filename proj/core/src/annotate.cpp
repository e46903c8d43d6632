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

#include "randr/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace randr {
namespace {

struct Extent {
  int xmin = 0, ymin = 0, xmax = -1, ymax = -1;
  std::int64_t count = 0;

  void add(int x, int y) {
    if (count == 0) {
      xmin = xmax = x;
      ymin = ymax = y;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    ++count;
  }
  BBox box() const { return {double(xmin), double(ymin), double(xmax + 1), double(ymax + 1)}; }
};

// Pixel-plane offsets (relative to the principal point) of the two planes
// through the camera center tangent to a sphere, along one image axis.
// Solves (c_a - s c_z)^2 = r^2 (1 + s^2) for the slope s.
std::pair<double, double> tangent_slopes(double ca, double cz, double r) {
  const double a = cz * cz - r * r;
  const double b = -2.0 * ca * cz;
  const double c = ca * ca - r * r;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double s = std::sqrt(disc);
  const double s0 = (-b - s) / (2.0 * a);
  const double s1 = (-b + s) / (2.0 * a);
  return {std::min(s0, s1), std::max(s0, s1)};
}

}  // namespace

std::vector<Annotation> boxes_from_idmask(const IdMask& mask, std::int64_t min_visible_pixels,
                                          std::span<const ObjectInstance> objects) {
  std::map<int, Extent> extents;
  for (const ObjectInstance& obj : objects) extents.emplace(obj.id, Extent{});
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const auto it = extents.find(mask.at(x, y));
      if (it != extents.end()) it->second.add(x, y);
    }
  }
  std::vector<Annotation> out;
  for (const ObjectInstance& obj : objects) {
    const Extent& e = extents.at(obj.id);
    if (e.count == 0 || e.count < min_visible_pixels) continue;
    out.push_back({obj.id, obj.shape, e.box(), e.count});
  }
  std::sort(out.begin(), out.end(),
            [](const Annotation& a, const Annotation& b) { return a.object_id < b.object_id; });
  return out;
}

std::optional<BBox> analytic_sphere_bbox(const ObjectInstance& sphere, const CameraModel& camera) {
  const Vec3 c = camera.pose.to_local(sphere.pose.position);
  const double r = sphere.dims.x();
  if (!(c.z() > r)) return std::nullopt;
  const double f = camera.focal_px();
  const Vec2 pp = camera.principal_point();
  const auto [sx0, sx1] = tangent_slopes(c.x(), c.z(), r);
  const auto [sy0, sy1] = tangent_slopes(c.y(), c.z(), r);
  return BBox{pp.x() + f * sx0, pp.y() + f * sy0, pp.x() + f * sx1, pp.y() + f * sy1};
}

std::vector<Annotation> annotate(const IdMask& full_mask, const SceneView& view,
                                 const AnnotatorSettings& settings) {
  std::vector<ObjectInstance> objects;
  objects.reserve(view.objects.size());
  for (const RenderObject* obj : view.objects) objects.push_back(obj->object());

  const IdMask mask = downscale_nearest(full_mask, settings.downscale);
  std::vector<Annotation> boxes = boxes_from_idmask(mask, settings.min_visible_pixels, objects);
  if (settings.mode == BoxMode::Modal) return boxes;

  // Amodal: silhouette of each object alone, at the same sample positions
  // the downscaled mask uses (top-left pixel of each block).
  const int f = settings.downscale;
  for (Annotation& ann : boxes) {
    const auto it = std::find_if(view.objects.begin(), view.objects.end(),
                                 [&](const RenderObject* o) { return o->object().id == ann.object_id; });
    const RenderObject& obj = **it;
    Extent e;
    for (int y = 0; y < mask.height; ++y) {
      for (int x = 0; x < mask.width; ++x) {
        const Ray ray = primary_ray(view.camera, x * f, y * f);
        if (obj.may_hit(ray, std::numeric_limits<double>::infinity()) && obj.intersect(ray)) {
          e.add(x, y);
        }
      }
    }
    if (e.count > 0) ann.bbox = e.box();
  }
  return boxes;
}

}  // namespace randr
