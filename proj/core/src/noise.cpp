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

#include "randr/noise.hpp"

#include <cmath>
#include <numeric>

#include "randr/seed.hpp"

namespace randr {
namespace {

constexpr double kDiag = 0.70710678118654752440;

// Eight unit gradients at 45 degree steps.
constexpr double kGradX[8] = {1.0, -1.0, 0.0, 0.0, kDiag, -kDiag, kDiag, -kDiag};
constexpr double kGradY[8] = {0.0, 0.0, 1.0, -1.0, kDiag, kDiag, -kDiag, -kDiag};

inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }
inline double fade_derivative(double t) { return 30.0 * t * t * (t * (t - 2.0) + 1.0); }
inline double lerp(double a, double b, double t) { return a + t * (b - a); }

struct Corners {
  int h00, h10, h01, h11;
  double xf, yf;
};

inline Corners lattice(double x, double y, const PermutationTable& p) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int xi = static_cast<int>(static_cast<std::int64_t>(fx) & 255);
  const int yi = static_cast<int>(static_cast<std::int64_t>(fy) & 255);
  const int a = p[xi] + yi;
  const int b = p[xi + 1] + yi;
  return {p[a] & 7, p[b] & 7, p[a + 1] & 7, p[b + 1] & 7, x - fx, y - fy};
}

inline double dot(int h, double x, double y) { return kGradX[h] * x + kGradY[h] * y; }

}  // namespace

PermutationTable PermutationTable::from_seed(std::uint64_t seed) {
  std::array<std::uint8_t, 256> perm{};
  std::iota(perm.begin(), perm.end(), std::uint8_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::uint8_t>(perm));
  PermutationTable table;
  for (std::size_t i = 0; i < 256; ++i) {
    table.entries_[i] = perm[i];
    table.entries_[i + 256] = perm[i];
  }
  return table;
}

double perlin2(double x, double y, const PermutationTable& table) {
  const Corners c = lattice(x, y, table);
  const double u = fade(c.xf);
  const double v = fade(c.yf);
  const double n00 = dot(c.h00, c.xf, c.yf);
  const double n10 = dot(c.h10, c.xf - 1.0, c.yf);
  const double n01 = dot(c.h01, c.xf, c.yf - 1.0);
  const double n11 = dot(c.h11, c.xf - 1.0, c.yf - 1.0);
  return lerp(lerp(n00, n10, u), lerp(n01, n11, u), v) / kPerlin2Bound;
}

NoiseSample perlin2_with_gradient(double x, double y, const PermutationTable& table) {
  const Corners c = lattice(x, y, table);
  const double u = fade(c.xf);
  const double v = fade(c.yf);
  const double du = fade_derivative(c.xf);
  const double dv = fade_derivative(c.yf);
  const double n00 = dot(c.h00, c.xf, c.yf);
  const double n10 = dot(c.h10, c.xf - 1.0, c.yf);
  const double n01 = dot(c.h01, c.xf, c.yf - 1.0);
  const double n11 = dot(c.h11, c.xf - 1.0, c.yf - 1.0);
  const double x0 = lerp(n00, n10, u);
  const double x1 = lerp(n01, n11, u);

  // d/dx of lerp(n_a, n_b, u) = ga_x + u (gb_x - ga_x) + du (n_b - n_a).
  const double dx0 = lerp(kGradX[c.h00], kGradX[c.h10], u) + du * (n10 - n00);
  const double dx1 = lerp(kGradX[c.h01], kGradX[c.h11], u) + du * (n11 - n01);
  const double dy0 = lerp(kGradY[c.h00], kGradY[c.h10], u);
  const double dy1 = lerp(kGradY[c.h01], kGradY[c.h11], u);

  NoiseSample s;
  s.value = lerp(x0, x1, v) / kPerlin2Bound;
  s.dx = lerp(dx0, dx1, v) / kPerlin2Bound;
  s.dy = (lerp(dy0, dy1, v) + dv * (x1 - x0)) / kPerlin2Bound;
  return s;
}

double fbm2(double x, double y, int octaves, double persistence, const PermutationTable& table) {
  double sum = 0.0;
  double weight_sum = 0.0;
  double weight = 1.0;
  double scale = 1.0;
  for (int o = 0; o < octaves; ++o) {
    sum += weight * perlin2(x * scale, y * scale, table);
    weight_sum += weight;
    weight *= persistence;
    scale *= 2.0;
  }
  return weight_sum > 0.0 ? sum / weight_sum : 0.0;
}

}  // namespace randr
