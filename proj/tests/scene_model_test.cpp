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

#include <bit>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "randr/errors.hpp"
#include "randr/geometry.hpp"
#include "randr/scene.hpp"
#include "randr/seed.hpp"

namespace randr {
namespace {

TEST(DerivedSeed, PureAndIndexSeparated) {
  EXPECT_EQ(derived_seed(7, 0), derived_seed(7, 0));
  EXPECT_EQ(derived_seed(0xDEADBEEFull, 123456), derived_seed(0xDEADBEEFull, 123456));
  EXPECT_NE(derived_seed(7, 0), derived_seed(7, 1));
}

// Reference values computed once from the documented construction and
// frozen; any change to the mixing breaks dataset reproducibility.
std::uint64_t mix64_oracle(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

TEST(DerivedSeed, MatchesDocumentedConstruction) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t s = gen();
    const std::uint64_t i = gen() % 100000;
    const std::uint64_t expected =
        mix64_oracle(mix64_oracle(s ^ (i * 0x9E3779B97F4A7C15ull)) + 0x9E3779B97F4A7C15ull);
    ASSERT_EQ(derived_seed(s, i), expected);
  }
}

TEST(DerivedSeed, FrozenValues) {
  EXPECT_EQ(derived_seed(0, 0), 0xe220a8397b1dcdafull);
  EXPECT_EQ(derived_seed(42, 0), 0x989b3f130a063869ull);
  EXPECT_EQ(derived_seed(42, 1), 0x57e1faba65107204ull);
}

TEST(DerivedSeed, AvalancheMonteCarlo) {
  std::mt19937_64 gen(2024);
  constexpr int kTrials = 100000;
  double flipped = 0.0;
  for (int k = 0; k < kTrials; ++k) {
    std::uint64_t s = gen();
    std::uint64_t i = gen();
    const std::uint64_t before = derived_seed(s, i);
    const int bit = static_cast<int>(gen() % 128);
    if (bit < 64) {
      s ^= 1ull << bit;
    } else {
      i ^= 1ull << (bit - 64);
    }
    flipped += std::popcount(before ^ derived_seed(s, i));
  }
  const double mean = flipped / kTrials;
  EXPECT_GE(mean, 24.0);
  EXPECT_LE(mean, 40.0);
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  Rng rng(5);
  std::array<int, 7> hits{};
  for (int k = 0; k < 70000; ++k) {
    const auto v = rng.uniform_int(2, 8);
    ASSERT_GE(v, 2);
    ASSERT_LE(v, 8);
    ++hits[static_cast<std::size_t>(v - 2)];
  }
  for (int h : hits) EXPECT_NEAR(h / 70000.0, 1.0 / 7.0, 0.01);
}

TEST(Rng, UniformHalfOpen) {
  Rng rng(9);
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(ShapeClass, StableCodes) {
  EXPECT_EQ(class_code(ShapeClass::Box), 0);
  EXPECT_EQ(class_code(ShapeClass::Cylinder), 1);
  EXPECT_EQ(class_code(ShapeClass::Sphere), 2);
  for (ShapeClass c : kShapeClasses) {
    EXPECT_EQ(shape_class_from_code(class_code(c)), c);
    EXPECT_EQ(parse_shape_class(to_string(c)), c);
  }
  EXPECT_FALSE(shape_class_from_code(3).has_value());
  EXPECT_FALSE(parse_shape_class("cone").has_value());
}

TEST(Pose, QuaternionAlwaysUnit) {
  const Pose p(Vec3(1, 2, 3), Quat(2.0, 0.5, -1.0, 3.0));
  EXPECT_NEAR(p.orientation.norm(), 1.0, 1e-9);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 6.3);
  for (int k = 0; k < 1000; ++k) {
    EXPECT_NEAR(Pose::from_yaw(Vec3::Zero(), u(gen)).orientation.norm(), 1.0, 1e-9);
  }
}

TEST(LookAt, ForwardMatchesDefinition) {
  const Pose pose = look_at(Vec3(0, -5, 5), Vec3::Zero());
  const Vec3 forward = pose.orientation * Vec3::UnitZ();
  const Vec3 expected = Vec3(0, 5, -5).normalized();
  EXPECT_NEAR((forward - expected).norm(), 0.0, 1e-12);
  const Eigen::Matrix3d r = pose.orientation.toRotationMatrix();
  EXPECT_NEAR((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 0.0, 1e-12);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  // Image "down" points toward the ground for an upright camera.
  EXPECT_LT((pose.orientation * Vec3::UnitY()).z(), 0.0);
}

TEST(LookAt, Degenerate) {
  EXPECT_THROW(look_at(Vec3(0, 0, 5), Vec3::Zero()), DegenerateLookAt);
  EXPECT_THROW(look_at(Vec3(1, 1, 1), Vec3(1, 1, 1)), DegenerateLookAt);
  EXPECT_THROW(look_at(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)), DegenerateLookAt);
}

TEST(LookAt, TargetProjectsToPrincipalPoint) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 eye(u(gen), u(gen), u(gen));
    const Vec3 target(u(gen), u(gen), u(gen));
    const Vec3 d = target - eye;
    if (d.norm() < 1e-3 || d.normalized().cross(kWorldUp).norm() < 1e-3) continue;
    CameraModel cam;
    cam.pose = look_at(eye, target);
    const auto px = project(cam, target);
    ASSERT_TRUE(px.has_value());
    ASSERT_LT((*px - cam.principal_point()).norm(), 1e-6);
    ++checked;
  }
}

TEST(Project, PrincipalPointFocalAndBehind) {
  CameraModel cam;
  cam.pose = look_at(Vec3(0, -4, 0.5), Vec3(0, 0, 0.5));
  cam.width = 640;
  cam.height = 480;
  const auto on_axis = project(cam, Vec3(0, 3, 0.5));
  ASSERT_TRUE(on_axis.has_value());
  EXPECT_NEAR((*on_axis - Vec2(320, 240)).norm(), 0.0, 1e-9);

  cam.horizontal_fov = M_PI / 2;
  EXPECT_NEAR(cam.focal_px(), 320.0, 1e-9);

  EXPECT_FALSE(project(cam, Vec3(0, -6, 0.5)).has_value());
  EXPECT_FALSE(project(cam, Vec3(1, -4, 0.5)).has_value());  // zero depth

  // Right of the camera maps to larger u; above it to smaller v.
  const auto right = project(cam, Vec3(1, 0, 0.5));
  const auto up = project(cam, Vec3(0, 0, 1.5));
  ASSERT_TRUE(right && up);
  EXPECT_NEAR(right->x(), 320.0 + 320.0 * 1.0 / 4.0, 1e-9);
  EXPECT_NEAR(up->y(), 240.0 - 320.0 * 1.0 / 4.0, 1e-9);
}

TEST(CameraModel, ValidateAndDownscale) {
  CameraModel cam;
  EXPECT_NO_THROW(cam.validate());
  cam.horizontal_fov = M_PI;
  EXPECT_THROW(cam.validate(), ValidationError);
  cam.horizontal_fov = 1.0;
  cam.width = 0;
  EXPECT_THROW(cam.validate(), ValidationError);
  CameraModel full;
  const CameraModel half = full.downscaled(2);
  EXPECT_EQ(half.width, 960);
  EXPECT_EQ(half.height, 540);
  EXPECT_NEAR(half.focal_px(), full.focal_px() / 2, 1e-9);
}

TEST(ObjectInstance, RestsOnGroundAndValidates) {
  ObjectInstance box{0, ShapeClass::Box, Pose::from_yaw(Vec3(0, 0, 0.15), 0.7), Vec3(0.2, 0.3, 0.3), 0};
  EXPECT_NEAR(box.min_z(), 0.0, 1e-12);
  EXPECT_NEAR(box.footprint_radius(), 0.5 * std::hypot(0.2, 0.3), 1e-12);
  EXPECT_NO_THROW(box.validate());
  ObjectInstance sphere{1, ShapeClass::Sphere, Pose(Vec3(0, 0, 0.1), Quat::Identity()), Vec3(0.1, 0.1, 0.1), 0};
  EXPECT_NEAR(sphere.min_z(), 0.0, 1e-12);
  sphere.dims = Vec3(0.1, 0.2, 0.1);
  EXPECT_THROW(sphere.validate(), ValidationError);
  box.dims.x() = 0.0;
  EXPECT_THROW(box.validate(), ValidationError);
}

}  // namespace
}  // namespace randr
