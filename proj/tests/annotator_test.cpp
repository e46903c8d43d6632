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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "randr/annotate.hpp"
#include "randr/render.hpp"
#include "randr/sampler.hpp"

namespace randr {
namespace {

std::vector<ObjectInstance> dummy_objects(int n) {
  std::vector<ObjectInstance> objs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    objs[static_cast<std::size_t>(i)].id = i;
    objs[static_cast<std::size_t>(i)].shape = static_cast<ShapeClass>(i % 3);
  }
  return objs;
}

TEST(BoxesFromIdMask, FilledRectangle) {
  IdMask mask(40, 30, 1, kGroundId);
  for (int y = 10; y <= 19; ++y)
    for (int x = 5; x <= 14; ++x) mask.at(x, y) = 1;
  const auto objs = dummy_objects(2);
  const auto boxes = boxes_from_idmask(mask, 25, objs);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0].object_id, 1);
  EXPECT_EQ(boxes[0].shape, ShapeClass::Cylinder);
  EXPECT_EQ(boxes[0].bbox, (BBox{5, 10, 15, 20}));
  EXPECT_EQ(boxes[0].visible_pixels, 100);
}

TEST(BoxesFromIdMask, EmptyMask) {
  const IdMask mask(16, 16, 1, kBackgroundId);
  EXPECT_TRUE(boxes_from_idmask(mask, 0, dummy_objects(3)).empty());
}

TEST(BoxesFromIdMask, MinVisibleThreshold) {
  IdMask mask(16, 16, 1, kGroundId);
  for (int x = 0; x < 24; ++x) mask.at(x % 16, x / 16) = 0;
  EXPECT_TRUE(boxes_from_idmask(mask, 25, dummy_objects(1)).empty());
  EXPECT_EQ(boxes_from_idmask(mask, 24, dummy_objects(1)).size(), 1u);
}

TEST(BoxesFromIdMask, RandomBlobsMatchPerPixelScan) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    IdMask mask(64, 48, 1, kGroundId);
    const int n = 1 + trial % 6;
    std::uniform_int_distribution<int> ux(0, 63), uy(0, 47), uid(0, n - 1), len(1, 20);
    for (int s = 0; s < 40; ++s) {
      const int id = uid(gen), x0 = ux(gen), y0 = uy(gen), w = len(gen), h = len(gen);
      for (int y = y0; y < std::min(48, y0 + h); ++y)
        for (int x = x0; x < std::min(64, x0 + w); ++x) mask.at(x, y) = id;
    }
    const auto scan = oracle::scan_mask(mask);
    const auto boxes = boxes_from_idmask(mask, 1, dummy_objects(n));
    ASSERT_EQ(boxes.size(), scan.size());
    for (std::size_t k = 0; k < boxes.size(); ++k) {
      const auto& s = scan.at(boxes[k].object_id);
      if (k > 0) ASSERT_LT(boxes[k - 1].object_id, boxes[k].object_id);
      ASSERT_EQ(boxes[k].bbox, (BBox{double(s.xmin), double(s.ymin), double(s.xmax + 1), double(s.ymax + 1)}));
      ASSERT_EQ(boxes[k].visible_pixels, s.count);
    }
  }
}

TEST(AnalyticSphereBBox, OnAxisIsCenteredSquare) {
  CameraModel cam;
  cam.pose = look_at(Vec3(2, -3, 1.5), Vec3(0, 0, 0.2));
  ObjectInstance s;
  s.shape = ShapeClass::Sphere;
  s.pose = Pose(Vec3(0, 0, 0.2), Quat::Identity());
  s.dims = Vec3::Constant(0.2);
  const auto box = analytic_sphere_bbox(s, cam);
  ASSERT_TRUE(box.has_value());
  const Vec2 pp = cam.principal_point();
  EXPECT_NEAR(0.5 * (box->xmin + box->xmax), pp.x(), 1e-6);
  EXPECT_NEAR(0.5 * (box->ymin + box->ymax), pp.y(), 1e-6);
  EXPECT_NEAR(box->width(), box->height(), 1e-6);
  // Half width = f * tan(asin(r / d)).
  const double d = (cam.pose.position - s.pose.position).norm();
  EXPECT_NEAR(0.5 * box->width(), cam.focal_px() * std::tan(std::asin(0.2 / d)), 1e-6);
}

TEST(AnalyticSphereBBox, BehindCamera) {
  CameraModel cam;
  cam.pose = look_at(Vec3(0, -3, 1), Vec3(0, 0, 1));
  ObjectInstance s;
  s.shape = ShapeClass::Sphere;
  s.pose = Pose(Vec3(0, -5, 1), Quat::Identity());
  s.dims = Vec3::Constant(0.3);
  EXPECT_FALSE(analytic_sphere_bbox(s, cam).has_value());
}

TEST(AnalyticSphereBBox, ContainsEverySilhouetteSample) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    CameraModel cam;
    cam.width = 320;
    cam.height = 180;
    cam.pose = look_at(Vec3(1.5 * std::cos(trial), 1.5 * std::sin(trial), 1.0), Vec3(u(gen), u(gen), 0.1));
    ObjectInstance s;
    s.shape = ShapeClass::Sphere;
    s.dims = Vec3::Constant(0.15);
    s.pose = Pose(Vec3(u(gen), u(gen), 0.15), Quat::Identity());
    const auto box = analytic_sphere_bbox(s, cam);
    ASSERT_TRUE(box.has_value());
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (int y = 0; y < cam.height; ++y) {
      for (int x = 0; x < cam.width; ++x) {
        if (!intersect(primary_ray(cam, x, y), s)) continue;
        xmin = std::min(xmin, x + 0.5);
        xmax = std::max(xmax, x + 0.5);
        ymin = std::min(ymin, y + 0.5);
        ymax = std::max(ymax, y + 0.5);
      }
    }
    if (xmin > xmax) continue;
    EXPECT_LE(box->xmin, xmin);
    EXPECT_GE(box->xmax, xmax);
    EXPECT_LE(box->ymin, ymin);
    EXPECT_GE(box->ymax, ymax);
    // ...and is tight to within one pixel.
    if (box->xmin > 0 && box->xmax < cam.width && box->ymin > 0 && box->ymax < cam.height) {
      EXPECT_LT(xmin - box->xmin, 1.0);
      EXPECT_LT(box->xmax - xmax, 1.0);
      EXPECT_LT(ymin - box->ymin, 1.0);
      EXPECT_LT(box->ymax - ymax, 1.0);
    }
  }
}

struct Frame {
  TextureLibrary lib;
  std::vector<RenderObject> objects;
  SceneView view;
};

void build_view(Frame& f, const SceneSpec& scene) {
  for (const auto& o : scene.objects) f.objects.emplace_back(o, &f.lib.images[static_cast<std::size_t>(o.texture_id)]);
  f.view.camera = scene.camera;
  f.view.light = scene.light;
  f.view.ground_texture = &f.lib.images[static_cast<std::size_t>(scene.ground_texture_id)];
  for (const auto& o : f.objects) f.view.objects.push_back(&o);
}

TEST(Annotate, ModalBoxesEqualScanOfDownscaledMask) {
  LibrarySpec spec;
  spec.count = 8;
  spec.resolution = 16;
  SamplerConfig cfg;
  cfg.image_width = 640;
  cfg.image_height = 360;
  cfg.texture_count = 8;
  for (int i = 0; i < 10; ++i) {
    Frame f;
    f.lib = build_texture_library(spec, 1);
    const SceneSpec scene = sample_scene(cfg, 5, i);
    build_view(f, scene);
    const RenderOutput out = render(f.view, {}, 1);
    const auto anns = annotate(out.id_mask, f.view, {});
    // Independent downscale: top-left sample of each 2x2 block.
    IdMask half(320, 180, 1);
    for (int y = 0; y < 180; ++y)
      for (int x = 0; x < 320; ++x) half.at(x, y) = out.id_mask.at(2 * x, 2 * y);
    const auto scan = oracle::scan_mask(half);
    std::size_t expected = 0;
    for (const auto& [id, s] : scan) expected += s.count >= 25 ? 1 : 0;
    ASSERT_EQ(anns.size(), expected);
    for (const auto& a : anns) {
      const auto& s = scan.at(a.object_id);
      EXPECT_EQ(a.bbox, (BBox{double(s.xmin), double(s.ymin), double(s.xmax + 1), double(s.ymax + 1)}));
      EXPECT_EQ(a.visible_pixels, s.count);
      EXPECT_EQ(a.shape, scene.objects[static_cast<std::size_t>(a.object_id)].shape);
      EXPECT_TRUE(a.bbox.valid());
      EXPECT_GE(a.bbox.xmin, 0);
      EXPECT_LE(a.bbox.xmax, 320);
      EXPECT_GE(a.bbox.ymin, 0);
      EXPECT_LE(a.bbox.ymax, 180);
    }
  }
}

TEST(Annotate, FullyOccludedObjectDropped) {
  LibrarySpec spec;
  spec.count = 2;
  spec.resolution = 8;
  Frame f;
  f.lib = build_texture_library(spec, 1);
  SceneSpec scene;
  scene.camera.width = 320;
  scene.camera.height = 180;
  scene.camera.pose = look_at(Vec3(0, -3, 0.3), Vec3(0, 0, 0.3));
  ObjectInstance big;
  big.id = 0;
  big.shape = ShapeClass::Box;
  big.dims = Vec3(0.8, 0.3, 0.6);
  big.pose = Pose(Vec3(0, -0.5, 0.3), Quat::Identity());
  ObjectInstance hidden;
  hidden.id = 1;
  hidden.shape = ShapeClass::Sphere;
  hidden.dims = Vec3::Constant(0.1);
  hidden.pose = Pose(Vec3(0, 0.5, 0.1), Quat::Identity());
  scene.objects = {big, hidden};
  build_view(f, scene);
  const RenderOutput out = render(f.view, {}, 1);
  const auto modal = annotate(out.id_mask, f.view, {});
  ASSERT_EQ(modal.size(), 1u);
  EXPECT_EQ(modal[0].object_id, 0);
  AnnotatorSettings amodal;
  amodal.mode = BoxMode::Amodal;
  EXPECT_EQ(annotate(out.id_mask, f.view, amodal).size(), 1u);
}

TEST(Annotate, AmodalBoxCoversOccludedExtent) {
  LibrarySpec spec;
  spec.count = 2;
  spec.resolution = 8;
  Frame f;
  f.lib = build_texture_library(spec, 1);
  SceneSpec scene;
  scene.camera.width = 320;
  scene.camera.height = 180;
  scene.camera.pose = look_at(Vec3(0, -3, 0.3), Vec3(0, 0, 0.3));
  ObjectInstance front;
  front.id = 0;
  front.shape = ShapeClass::Box;
  front.dims = Vec3(0.3, 0.3, 0.6);
  front.pose = Pose(Vec3(0.15, -0.5, 0.3), Quat::Identity());
  ObjectInstance back;
  back.id = 1;
  back.shape = ShapeClass::Box;
  back.dims = Vec3(0.6, 0.3, 0.3);
  back.pose = Pose(Vec3(0, 0.5, 0.15), Quat::Identity());
  scene.objects = {front, back};
  build_view(f, scene);
  const RenderOutput out = render(f.view, {}, 1);
  const auto modal = annotate(out.id_mask, f.view, {});
  AnnotatorSettings settings;
  settings.mode = BoxMode::Amodal;
  const auto amodal = annotate(out.id_mask, f.view, settings);
  ASSERT_EQ(modal.size(), 2u);
  ASSERT_EQ(amodal.size(), 2u);
  const BBox& m = modal[1].bbox;
  const BBox& a = amodal[1].bbox;
  EXPECT_LE(a.xmin, m.xmin);
  EXPECT_LE(a.ymin, m.ymin);
  EXPECT_GE(a.xmax, m.xmax);
  EXPECT_GE(a.ymax, m.ymax);
  EXPECT_GT(a.area(), m.area());
  EXPECT_EQ(modal[0].bbox, amodal[0].bbox);
}

}  // namespace
}  // namespace randr
