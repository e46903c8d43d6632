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
#include "randr/render.hpp"
#include "randr/scene.hpp"

namespace randr {

/// Pixel-space box, half-open: [xmin, xmax) x [ymin, ymax).
struct BBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool valid() const { return xmin < xmax && ymin < ymax; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Annotation {
  int object_id = 0;
  ShapeClass shape = ShapeClass::Box;
  BBox bbox;
  std::int64_t visible_pixels = 0;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

enum class BoxMode : std::uint8_t { Modal, Amodal };

/// Tight boxes around each object id present in `mask`, dropping objects
/// with fewer than min_visible_pixels pixels. Ids absent from `objects`
/// are ignored. Sorted by object id.
std::vector<Annotation> boxes_from_idmask(const IdMask& mask, std::int64_t min_visible_pixels,
                                          std::span<const ObjectInstance> objects);

/// Exact bounding box of a sphere's projected silhouette (tangent planes
/// through the camera axes). nullopt when the sphere is not entirely in
/// front of the camera.
std::optional<BBox> analytic_sphere_bbox(const ObjectInstance& sphere, const CameraModel& camera);

struct AnnotatorSettings {
  std::int64_t min_visible_pixels = 25;
  BoxMode mode = BoxMode::Modal;
  int downscale = 2;
};

/// Annotations at the downscaled resolution. The full-resolution id mask is
/// reduced by top-left sampling. Modal boxes bound the visible pixels;
/// amodal boxes bound each object's unoccluded silhouette sampled at the
/// same positions (clipped to the image), still gated by visible pixels.
std::vector<Annotation> annotate(const IdMask& full_mask, const SceneView& view,
                                 const AnnotatorSettings& settings);

}  // namespace randr
