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

namespace randr {

/// 256-entry permutation of 0..255, repeated once so lattice hashing can
/// index up to 511 without wrapping.
class PermutationTable {
 public:
  /// Seeded Fisher-Yates shuffle of the identity permutation.
  static PermutationTable from_seed(std::uint64_t seed);

  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::array<std::uint8_t, 512>& entries() const { return entries_; }

  friend bool operator==(const PermutationTable&, const PermutationTable&) = default;

 private:
  std::array<std::uint8_t, 512> entries_{};
};

// Maximum magnitude of 2-D gradient noise with unit-length gradients.
inline constexpr double kPerlin2Bound = 0.70710678118654752440;

/// Improved gradient noise restricted to 2-D, divided by kPerlin2Bound so
/// the result lies in [-1, 1]. Zero at every integer lattice point.
/// Gradients are the eight unit vectors at multiples of 45 degrees.
double perlin2(double x, double y, const PermutationTable& table);

struct NoiseSample {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

/// perlin2 together with its analytic gradient (derivative of the
/// quintic-faded bilinear blend). Same value as perlin2, bit for bit.
NoiseSample perlin2_with_gradient(double x, double y, const PermutationTable& table);

/// Fractal sum of `octaves` perlin2 layers at doubling frequency, weighted
/// by persistence^o and normalized by the weight sum. Output in [-1, 1].
double fbm2(double x, double y, int octaves, double persistence, const PermutationTable& table);

}  // namespace randr
