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

#include "randr/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "randr/errors.hpp"
#include "randr/parallel.hpp"

namespace randr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvTwoPi = 0.5 / std::numbers::pi;
constexpr double kShadowOffset = 1e-7;

// Below-ground parking depth for pooled slots.
constexpr double kParkDepth = 50.0;

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

struct BodyHit {
  double t;
  Vec3 normal;  // body frame
  Vec2 uv;
};

std::optional<BodyHit> hit_sphere(const Vec3& o, const Vec3& d, double r) {
  const double b = o.dot(d);
  const double c = o.squaredNorm() - r * r;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  double t = -b - s;
  if (t < 0.0) t = -b + s;
  if (t < 0.0) return std::nullopt;
  const Vec3 p = o + t * d;
  const Vec3 n = p / r;
  const double u = (std::atan2(p.y(), p.x()) + std::numbers::pi) * kInvTwoPi;
  const double v = std::acos(std::clamp(p.z() / r, -1.0, 1.0)) / std::numbers::pi;
  return BodyHit{t, n, Vec2(clamp01(u), clamp01(v))};
}

std::optional<BodyHit> hit_box(const Vec3& o, const Vec3& d, const Vec3& half) {
  double t_near = -kInf;
  double t_far = kInf;
  int near_axis = 0;
  int far_axis = 0;
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (o[k] < -half[k] || o[k] > half[k]) return std::nullopt;
      continue;
    }
    double t0 = (-half[k] - o[k]) / d[k];
    double t1 = (half[k] - o[k]) / d[k];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_near) {
      t_near = t0;
      near_axis = k;
    }
    if (t1 < t_far) {
      t_far = t1;
      far_axis = k;
    }
  }
  if (t_near > t_far || t_far < 0.0) return std::nullopt;
  const bool outside = t_near >= 0.0;
  const double t = outside ? t_near : t_far;
  const int axis = outside ? near_axis : far_axis;
  Vec3 n = Vec3::Zero();
  n[axis] = d[axis] > 0.0 ? -1.0 : 1.0;
  const Vec3 p = o + t * d;
  const int i = axis == 0 ? 1 : 0;
  const int j = axis == 2 ? 1 : 2;
  const double u = (p[i] + half[i]) / (2.0 * half[i]);
  const double v = (p[j] + half[j]) / (2.0 * half[j]);
  return BodyHit{t, n, Vec2(clamp01(u), clamp01(v))};
}

std::optional<BodyHit> hit_cylinder(const Vec3& o, const Vec3& d, double r, double half_len) {
  double best_t = kInf;
  Vec3 best_n = Vec3::Zero();
  Vec2 best_uv = Vec2::Zero();

  // Lateral surface.
  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > 0.0) {
    const double b = o.x() * d.x() + o.y() * d.y();
    const double c = o.x() * o.x() + o.y() * o.y() - r * r;
    const double disc = b * b - a * c;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      for (const double t : {(-b - s) / a, (-b + s) / a}) {
        if (t < 0.0 || t >= best_t) continue;
        const double z = o.z() + t * d.z();
        if (z < -half_len || z > half_len) continue;
        const Vec3 p = o + t * d;
        best_t = t;
        best_n = Vec3(p.x() / r, p.y() / r, 0.0);
        best_uv = Vec2(clamp01((std::atan2(p.y(), p.x()) + std::numbers::pi) * kInvTwoPi),
                       clamp01((z + half_len) / (2.0 * half_len)));
      }
    }
  }
  // Caps.
  if (d.z() != 0.0) {
    for (const double cap : {-half_len, half_len}) {
      const double t = (cap - o.z()) / d.z();
      if (t < 0.0 || t >= best_t) continue;
      const double x = o.x() + t * d.x();
      const double y = o.y() + t * d.y();
      if (x * x + y * y > r * r) continue;
      best_t = t;
      best_n = Vec3(0.0, 0.0, cap > 0.0 ? 1.0 : -1.0);
      best_uv = Vec2(clamp01(0.5 * (x / r + 1.0)), clamp01(0.5 * (y / r + 1.0)));
    }
  }
  if (best_t == kInf) return std::nullopt;
  return BodyHit{best_t, best_n, best_uv};
}

// Per-frame camera constants so every pixel ray is computed the same way.
struct RayGenerator {
  Eigen::Matrix3d world_from_camera;
  Vec3 eye;
  double inv_focal;
  double cx;
  double cy;

  explicit RayGenerator(const CameraModel& camera)
      : world_from_camera(camera.pose.orientation.toRotationMatrix()),
        eye(camera.pose.position),
        inv_focal(1.0 / camera.focal_px()),
        cx(0.5 * camera.width),
        cy(0.5 * camera.height) {}

  Ray operator()(int px, int py) const {
    const Vec3 local(((px + 0.5) - cx) * inv_focal, ((py + 0.5) - cy) * inv_focal, 1.0);
    return Ray{eye, (world_from_camera * local).normalized()};
  }
};

// Conservative pixel rectangle covering an object's bounding sphere; the
// whole image when the sphere reaches behind the camera.
struct ScreenRect {
  int x0, y0, x1, y1;  // inclusive
};

ScreenRect screen_rect(const RenderObject& obj, const CameraModel& cam, double bound) {
  const ScreenRect full{0, 0, cam.width - 1, cam.height - 1};
  const Vec3 c = cam.pose.to_local(obj.object().pose.position);
  const double r = bound * 1.001 + 1e-6;
  if (!(c.z() > r * 1.001)) return full;
  const double f = cam.focal_px();
  auto extent = [&](double ca) {
    const double a = c.z() * c.z() - r * r;
    const double b = -2.0 * ca * c.z();
    const double cc = ca * ca - r * r;
    const double s = std::sqrt(std::max(0.0, b * b - 4.0 * a * cc));
    return std::pair<double, double>((-b - s) / (2.0 * a), (-b + s) / (2.0 * a));
  };
  const auto [sx0, sx1] = extent(c.x());
  const auto [sy0, sy1] = extent(c.y());
  const double u0 = 0.5 * cam.width + f * sx0 - 2.0;
  const double u1 = 0.5 * cam.width + f * sx1 + 2.0;
  const double v0 = 0.5 * cam.height + f * sy0 - 2.0;
  const double v1 = 0.5 * cam.height + f * sy1 + 2.0;
  if (!std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(v0) || !std::isfinite(v1)) return full;
  ScreenRect rect;
  rect.x0 = static_cast<int>(std::clamp(std::floor(u0), -1.0, double(cam.width)));
  rect.x1 = static_cast<int>(std::clamp(std::ceil(u1), -1.0, double(cam.width)));
  rect.y0 = static_cast<int>(std::clamp(std::floor(v0), -1.0, double(cam.height)));
  rect.y1 = static_cast<int>(std::clamp(std::ceil(v1), -1.0, double(cam.height)));
  return rect;
}

Rgb scale_clamped(const Rgb& c, double k) {
  return {static_cast<float>(clamp01(c.r * k)), static_cast<float>(clamp01(c.g * k)),
          static_cast<float>(clamp01(c.b * k))};
}

}  // namespace

void RenderObject::bind(const ObjectInstance& object, const TextureImage* texture) {
  object_ = object;
  texture_ = texture;
  world_from_body_ = object.pose.orientation.toRotationMatrix();
  bound_radius_ = object.bounding_radius() * (1.0 + 1e-9) + 1e-12;
  active_ = true;
}

void RenderObject::park() {
  object_.pose.position = Vec3(0.0, 0.0, -kParkDepth - bound_radius_);
  texture_ = nullptr;
  active_ = false;
}

bool RenderObject::may_hit(const Ray& ray, double t_max) const {
  const Vec3 oc = ray.origin - object_.pose.position;
  const double b = oc.dot(ray.direction);
  const double c = oc.squaredNorm() - bound_radius_ * bound_radius_;
  if (c > 0.0 && b > 0.0) return false;
  const double disc = b * b - c;
  if (disc < 0.0) return false;
  if (c <= 0.0) return true;  // origin inside the bound
  return -b - std::sqrt(disc) <= t_max;
}

std::optional<Hit> RenderObject::intersect(const Ray& ray) const {
  const Vec3 o = world_from_body_.transpose() * (ray.origin - object_.pose.position);
  const Vec3 d = world_from_body_.transpose() * ray.direction;
  std::optional<BodyHit> body;
  switch (object_.shape) {
    case ShapeClass::Sphere:
      body = hit_sphere(o, d, object_.dims.x());
      break;
    case ShapeClass::Box:
      body = hit_box(o, d, 0.5 * object_.dims);
      break;
    case ShapeClass::Cylinder:
      body = hit_cylinder(o, d, object_.dims.x(), 0.5 * object_.dims.z());
      break;
  }
  if (!body) return std::nullopt;
  Hit hit;
  hit.t = body->t;
  hit.point = ray.origin + body->t * ray.direction;
  hit.normal = world_from_body_ * body->normal;
  if (hit.normal.dot(ray.direction) > 0.0) hit.normal = -hit.normal;
  hit.object_id = object_.id;
  hit.uv = body->uv;
  return hit;
}

std::optional<Hit> intersect(const Ray& ray, const ObjectInstance& object) {
  return RenderObject(object, nullptr).intersect(ray);
}

std::optional<Hit> intersect_ground(const Ray& ray) {
  if (!(ray.direction.z() < 0.0) || !(ray.origin.z() > 0.0)) return std::nullopt;
  const double t = -ray.origin.z() / ray.direction.z();
  Hit hit;
  hit.t = t;
  hit.point = ray.origin + t * ray.direction;
  hit.point.z() = 0.0;
  hit.normal = Vec3::UnitZ();
  hit.object_id = kGroundId;
  const double gu = 0.5 * hit.point.x();
  const double gv = 0.5 * hit.point.y();
  hit.uv = Vec2(gu - std::floor(gu), gv - std::floor(gv));
  return hit;
}

bool in_shadow(const Vec3& point, const Vec3& normal, const Vec3& light_position,
               std::span<const RenderObject* const> occluders) {
  const Vec3 origin = point + kShadowOffset * normal;
  Vec3 to_light = light_position - origin;
  const double distance = to_light.norm();
  if (!(distance > 0.0)) return false;
  const Ray ray{origin, to_light / distance};
  for (const RenderObject* obj : occluders) {
    if (!obj->may_hit(ray, distance)) continue;
    const auto hit = obj->intersect(ray);
    if (hit && hit->t < distance) return true;
  }
  return false;
}

Rgb shade(const Hit& hit, const LightSource& light, const TextureImage& texture,
          std::span<const RenderObject* const> occluders) {
  const Rgb texel = texture.texel(hit.uv.x(), hit.uv.y());
  const Vec3 to_light = (light.position - hit.point).normalized();
  const double cosine = hit.normal.dot(to_light);
  double factor = light.ambient;
  if (cosine > 0.0 && !in_shadow(hit.point, hit.normal, light.position, occluders)) {
    factor += light.intensity * cosine;
  }
  return scale_clamped(texel, factor);
}

Ray primary_ray(const CameraModel& camera, int px, int py) { return RayGenerator(camera)(px, py); }

RenderOutput render(const SceneView& view, const RenderSettings& settings, unsigned workers) {
  const CameraModel& cam = view.camera;
  RenderOutput out;
  out.color = ColorImage(cam.width, cam.height, 3);
  out.id_mask = IdMask(cam.width, cam.height, 1, kBackgroundId);
  const RayGenerator rays(cam);
  const std::span<const RenderObject* const> objects(view.objects);
  std::vector<ScreenRect> rects;
  rects.reserve(objects.size());
  for (const RenderObject* obj : objects) {
    rects.push_back(screen_rect(*obj, cam, obj->object().bounding_radius()));
  }

  parallel_for(static_cast<std::size_t>(cam.height), workers, [&](std::size_t row) {
    const int py = static_cast<int>(row);
    std::vector<std::size_t> row_objects;
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if (py >= rects[k].y0 && py <= rects[k].y1) row_objects.push_back(k);
    }
    for (int px = 0; px < cam.width; ++px) {
      const Ray ray = rays(px, py);
      std::optional<Hit> best = intersect_ground(ray);
      const RenderObject* best_obj = nullptr;
      double best_t = best ? best->t : kInf;
      for (const std::size_t k : row_objects) {
        if (px < rects[k].x0 || px > rects[k].x1) continue;
        const RenderObject* obj = objects[k];
        if (!obj->may_hit(ray, best_t)) continue;
        auto hit = obj->intersect(ray);
        if (!hit) continue;
        const bool closer = hit->t < best_t;
        const bool tie_wins = hit->t == best_t &&
                              (best_obj == nullptr || hit->object_id < best->object_id);
        if (closer || tie_wins) {
          best = hit;
          best_t = hit->t;
          best_obj = obj;
        }
      }
      Rgb color = settings.background;
      std::int32_t id = kBackgroundId;
      if (best) {
        const TextureImage* tex = best_obj ? best_obj->texture() : view.ground_texture;
        if (tex != nullptr) color = shade(*best, view.light, *tex, objects);
        id = best->object_id;
      }
      out.id_mask.at(px, py) = id;
      out.color.at(px, py, 0) = color.r;
      out.color.at(px, py, 1) = color.g;
      out.color.at(px, py, 2) = color.b;
    }
  });
  return out;
}

RenderOutput render(const SceneSpec& scene, const TextureLibrary& library,
                    const RenderSettings& settings, unsigned workers) {
  auto texture_at = [&](int id) -> const TextureImage* {
    if (id < 0 || static_cast<std::size_t>(id) >= library.size()) {
      throw BadTextureId("texture id " + std::to_string(id) + " outside library of " +
                         std::to_string(library.size()));
    }
    return &library.images[static_cast<std::size_t>(id)];
  };
  std::vector<RenderObject> objects;
  objects.reserve(scene.objects.size());
  for (const ObjectInstance& obj : scene.objects) objects.emplace_back(obj, texture_at(obj.texture_id));

  SceneView view;
  view.camera = scene.camera;
  view.light = scene.light;
  view.ground_texture = texture_at(scene.ground_texture_id);
  for (const RenderObject& obj : objects) view.objects.push_back(&obj);
  return render(view, settings, workers);
}

}  // namespace randr
