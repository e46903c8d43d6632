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

#include "randr/texture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "randr/errors.hpp"
#include "randr/noise.hpp"
#include "randr/parallel.hpp"

namespace randr {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool valid_color(const Rgb& c) {
  auto ok = [](float v) { return std::isfinite(v) && v >= 0.0f && v <= 1.0f; };
  return ok(c.r) && ok(c.g) && ok(c.b);
}

Rgb mix(const Rgb& a, const Rgb& b, double t) {
  return {static_cast<float>(a.r + t * (b.r - a.r)), static_cast<float>(a.g + t * (b.g - a.g)),
          static_cast<float>(a.b + t * (b.b - a.b))};
}

Rgb random_color(Rng& rng) {
  const double r = rng.uniform();
  const double g = rng.uniform();
  const double b = rng.uniform();
  return {static_cast<float>(r), static_cast<float>(g), static_cast<float>(b)};
}

void check(bool ok, const char* what) {
  if (!ok) throw InvalidPattern(std::string("texture pattern: ") + what);
}

void validate(const TexturePattern& pattern) {
  std::visit(Overloaded{
                 [](const pattern::Flat& p) { check(valid_color(p.color), "color outside [0,1]"); },
                 [](const pattern::Gradient& p) {
                   check(valid_color(p.color_a) && valid_color(p.color_b), "color outside [0,1]");
                   check(std::isfinite(p.dir_x) && std::isfinite(p.dir_y) &&
                             std::abs(std::hypot(p.dir_x, p.dir_y) - 1.0) < 1e-9,
                         "gradient direction must be a unit vector");
                 },
                 [](const pattern::Chess& p) {
                   check(valid_color(p.color_a) && valid_color(p.color_b), "color outside [0,1]");
                   check(p.cells_per_side >= 2, "chess needs at least 2 cells per side");
                 },
                 [](const pattern::Perlin& p) {
                   check(valid_color(p.color_a) && valid_color(p.color_b), "color outside [0,1]");
                   check(std::isfinite(p.base_frequency) && p.base_frequency > 0.0,
                         "perlin base_frequency must be positive");
                   check(p.octaves >= 1 && p.octaves <= 8, "perlin octaves must lie in [1, 8]");
                   check(std::isfinite(p.persistence) && p.persistence > 0.0 && p.persistence <= 1.0,
                         "perlin persistence must lie in (0, 1]");
                 },
             },
             pattern);
}

}  // namespace

std::string_view to_string(PatternFamily f) {
  switch (f) {
    case PatternFamily::Flat:
      return "flat";
    case PatternFamily::Gradient:
      return "gradient";
    case PatternFamily::Chess:
      return "chess";
    case PatternFamily::Perlin:
      return "perlin";
  }
  return "unknown";
}

std::optional<PatternFamily> parse_pattern_family(std::string_view name) {
  for (PatternFamily f : kPatternFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

PatternFamily family_of(const TexturePattern& p) { return static_cast<PatternFamily>(p.index()); }

TextureImage::TextureImage(int width, int height)
    : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 3, 0) {}

void TextureImage::set_pixel(int x, int y, const Rgb& c) {
  auto q = [](float v) {
    const float clamped = std::clamp(v, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::floor(clamped * 255.0f + 0.5f));
  };
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
  data_[i] = q(c.r);
  data_[i + 1] = q(c.g);
  data_[i + 2] = q(c.b);
}

TextureImage gen_texture(const TexturePattern& pattern, int resolution, std::uint64_t seed) {
  if (resolution < 2) throw InvalidPattern("texture resolution must be at least 2");
  validate(pattern);
  TextureImage image(resolution, resolution);
  const int n = resolution;

  std::visit(
      Overloaded{
          [&](const pattern::Flat& p) {
            for (int y = 0; y < n; ++y)
              for (int x = 0; x < n; ++x) image.set_pixel(x, y, p.color);
          },
          [&](const pattern::Gradient& p) {
            // Project onto the direction and stretch so the extreme corners
            // map to exactly color_a and color_b.
            const double lo = std::min(0.0, p.dir_x) + std::min(0.0, p.dir_y);
            const double hi = std::max(0.0, p.dir_x) + std::max(0.0, p.dir_y);
            const double inv = 1.0 / (n - 1);
            for (int y = 0; y < n; ++y) {
              for (int x = 0; x < n; ++x) {
                const double s = p.dir_x * (x * inv) + p.dir_y * (y * inv);
                image.set_pixel(x, y, mix(p.color_a, p.color_b, (s - lo) / (hi - lo)));
              }
            }
          },
          [&](const pattern::Chess& p) {
            for (int y = 0; y < n; ++y) {
              const long cy = static_cast<long>(y) * p.cells_per_side / n;
              for (int x = 0; x < n; ++x) {
                const long cx = static_cast<long>(x) * p.cells_per_side / n;
                image.set_pixel(x, y, ((cx + cy) & 1) == 0 ? p.color_a : p.color_b);
              }
            }
          },
          [&](const pattern::Perlin& p) {
            const PermutationTable table = PermutationTable::from_seed(seed);
            const double scale = p.base_frequency / n;
            for (int y = 0; y < n; ++y) {
              for (int x = 0; x < n; ++x) {
                const double v = fbm2(x * scale, y * scale, p.octaves, p.persistence, table);
                const double t = std::clamp(0.5 * (v + 1.0), 0.0, 1.0);
                image.set_pixel(x, y, mix(p.color_a, p.color_b, t));
              }
            }
          },
      },
      pattern);
  return image;
}

TexturePattern sample_pattern(Rng& rng, std::span<const PatternFamily> enabled,
                              const TextureRanges& ranges) {
  if (enabled.empty()) throw EmptyPatternSet("no texture pattern family enabled");
  std::vector<PatternFamily> families(enabled.begin(), enabled.end());
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());

  const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(families.size()) - 1);
  switch (families[static_cast<std::size_t>(pick)]) {
    case PatternFamily::Flat:
      return pattern::Flat{random_color(rng)};
    case PatternFamily::Gradient: {
      pattern::Gradient g;
      g.color_a = random_color(rng);
      g.color_b = random_color(rng);
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      g.dir_x = std::cos(angle);
      g.dir_y = std::sin(angle);
      return g;
    }
    case PatternFamily::Chess: {
      pattern::Chess c;
      c.color_a = random_color(rng);
      c.color_b = random_color(rng);
      c.cells_per_side =
          static_cast<int>(rng.uniform_int(ranges.chess_cells_min, ranges.chess_cells_max));
      return c;
    }
    case PatternFamily::Perlin: {
      pattern::Perlin p;
      p.base_frequency = ranges.perlin_frequency.sample(rng);
      p.octaves =
          static_cast<int>(rng.uniform_int(ranges.perlin_octaves_min, ranges.perlin_octaves_max));
      p.persistence = ranges.perlin_persistence.sample(rng);
      p.color_a = random_color(rng);
      p.color_b = random_color(rng);
      return p;
    }
  }
  return pattern::Flat{};
}

std::pair<TexturePattern, std::uint64_t> library_entry(const LibrarySpec& spec, int index) {
  Rng rng(derived_seed(spec.master_seed, static_cast<std::uint64_t>(index)));
  TexturePattern p = sample_pattern(rng, spec.enabled, spec.ranges);
  const std::uint64_t noise_seed = rng.next_u64();
  return {std::move(p), noise_seed};
}

TextureLibrary build_texture_library(const LibrarySpec& spec, unsigned workers) {
  if (spec.enabled.empty()) throw EmptyPatternSet("no texture pattern family enabled");
  if (spec.count < 1) throw ValidationError("texture library needs at least one texture");
  const auto n = static_cast<std::size_t>(spec.count);
  TextureLibrary lib;
  lib.images.resize(n);
  lib.patterns.resize(n);
  lib.seeds.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    auto [pattern, seed] = library_entry(spec, static_cast<int>(i));
    lib.images[i] = gen_texture(pattern, spec.resolution, seed);
    lib.patterns[i] = std::move(pattern);
    lib.seeds[i] = seed;
  });
  return lib;
}

}  // namespace randr
