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

#include "randr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "randr/errors.hpp"

namespace randr {
namespace {

void check_divisible(int width, int height, int factor) {
  if (factor < 1 || width % factor != 0 || height % factor != 0) {
    throw IndivisibleDimensions(std::to_string(width) + "x" + std::to_string(height) +
                                " is not divisible by " + std::to_string(factor));
  }
}

}  // namespace

ColorImage downscale(const ColorImage& image, int factor) {
  check_divisible(image.width, image.height, factor);
  ColorImage out(image.width / factor, image.height / factor, image.channels);
  const double inv = 1.0 / (factor * factor);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      for (int c = 0; c < image.channels; ++c) {
        double sum = 0.0;
        for (int dy = 0; dy < factor; ++dy)
          for (int dx = 0; dx < factor; ++dx) sum += image.at(x * factor + dx, y * factor + dy, c);
        out.at(x, y, c) = static_cast<float>(sum * inv);
      }
    }
  }
  return out;
}

IdMask downscale_nearest(const IdMask& mask, int factor) {
  check_divisible(mask.width, mask.height, factor);
  IdMask out(mask.width / factor, mask.height / factor, mask.channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < mask.channels; ++c) out.at(x, y, c) = mask.at(x * factor, y * factor, c);
  return out;
}

Rgb8Image to_rgb8(const ColorImage& image) {
  Rgb8Image out(image.width, image.height, image.channels);
  std::transform(image.data.begin(), image.data.end(), out.data.begin(), [](float v) {
    const float clamped = std::clamp(v, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::floor(clamped * 255.0f + 0.5f));
  });
  return out;
}

}  // namespace randr
