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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "randr/seed.hpp"

namespace randr {

struct Rgb {
  float r = 0.0f;
  float g = 0.0f;
  float b = 0.0f;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace pattern {

struct Flat {
  Rgb color;
};
struct Gradient {
  Rgb color_a;
  Rgb color_b;
  double dir_x = 1.0;  // unit direction in texture space (+x = columns)
  double dir_y = 0.0;
};
struct Chess {
  Rgb color_a;
  Rgb color_b;
  int cells_per_side = 8;
};
struct Perlin {
  double base_frequency = 4.0;  // cycles per texture width
  int octaves = 1;
  double persistence = 0.5;
  Rgb color_a;
  Rgb color_b;
};

}  // namespace pattern

using TexturePattern = std::variant<pattern::Flat, pattern::Gradient, pattern::Chess, pattern::Perlin>;

enum class PatternFamily : std::uint8_t { Flat = 0, Gradient = 1, Chess = 2, Perlin = 3 };

inline constexpr std::array<PatternFamily, 4> kPatternFamilies{
    PatternFamily::Flat, PatternFamily::Gradient, PatternFamily::Chess, PatternFamily::Perlin};

std::string_view to_string(PatternFamily f);
std::optional<PatternFamily> parse_pattern_family(std::string_view name);
PatternFamily family_of(const TexturePattern& p);

/// Square RGB texture. Channels are stored quantized to 8 bits and read
/// back as floats in [0, 1].
class TextureImage {
 public:
  TextureImage() = default;
  TextureImage(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb pixel(int x, int y) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
    constexpr float k = 1.0f / 255.0f;
    return {data_[i] * k, data_[i + 1] * k, data_[i + 2] * k};
  }
  void set_pixel(int x, int y, const Rgb& c);

  /// Nearest-texel lookup for uv in [0, 1]^2 (v = 0 is row 0).
  Rgb texel(double u, double v) const {
    int x = static_cast<int>(u * width_);
    int y = static_cast<int>(v * height_);
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return pixel(x, y);
  }

  std::span<const std::uint8_t> bytes() const { return data_; }

  friend bool operator==(const TextureImage&, const TextureImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Renders `pattern` at resolution x resolution. `seed` drives the Perlin
/// permutation table and is ignored by the other families. Throws
/// InvalidPattern for out-of-range fields or resolution < 2.
TextureImage gen_texture(const TexturePattern& pattern, int resolution, std::uint64_t seed);

/// Closed interval used by parameter sampling.
struct Range {
  double min = 0.0;
  double max = 0.0;
  double sample(Rng& rng) const { return rng.uniform(min, max); }
  bool valid() const { return min <= max; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Sampling ranges for library textures.
struct TextureRanges {
  Range perlin_frequency{2.0, 16.0};
  int perlin_octaves_min = 1;
  int perlin_octaves_max = 4;
  Range perlin_persistence{0.4, 0.6};
  int chess_cells_min = 4;
  int chess_cells_max = 16;

  friend bool operator==(const TextureRanges&, const TextureRanges&) = default;
};

/// Draws a family uniformly from `enabled` (in canonical order) and then
/// its parameters from `ranges`. Colors are uniform in [0,1]^3 and gradient
/// directions uniform on the circle.
TexturePattern sample_pattern(Rng& rng, std::span<const PatternFamily> enabled,
                              const TextureRanges& ranges);

struct TextureLibrary {
  std::vector<TextureImage> images;
  std::vector<TexturePattern> patterns;
  std::vector<std::uint64_t> seeds;

  std::size_t size() const { return images.size(); }
};

struct LibrarySpec {
  int count = 500;
  int resolution = 256;
  std::vector<PatternFamily> enabled{kPatternFamilies.begin(), kPatternFamilies.end()};
  TextureRanges ranges;
  std::uint64_t master_seed = 0;
};

/// Pattern and generation seed for library slot `index`; texture i depends
/// only on derived_seed(master_seed, i).
std::pair<TexturePattern, std::uint64_t> library_entry(const LibrarySpec& spec, int index);

/// Generates spec.count textures across `workers` threads (0 = all cores).
/// Output is ordered by index and bit-identical for any worker count.
/// Throws EmptyPatternSet when no family is enabled.
TextureLibrary build_texture_library(const LibrarySpec& spec, unsigned workers);

}  // namespace randr
