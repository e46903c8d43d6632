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
#include <vector>

namespace randr {

/// Row-major interleaved image.
template <typename T>
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<T> data;

  Image() = default;
  Image(int w, int h, int c, T fill = T{})
      : width(w), height(h), channels(c), data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  T& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }
  const T& at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }

  friend bool operator==(const Image&, const Image&) = default;
};

using ColorImage = Image<float>;        // 3 channels in [0, 1]
using IdMask = Image<std::int32_t>;     // 1 channel
using Rgb8Image = Image<std::uint8_t>;  // 3 channels

/// Box-filter downscale: each output pixel is the per-channel mean of its
/// factor x factor source block. Throws IndivisibleDimensions.
ColorImage downscale(const ColorImage& image, int factor);

/// Id-mask downscale keeping the top-left sample of each block (ids cannot
/// be averaged). Throws IndivisibleDimensions.
IdMask downscale_nearest(const IdMask& mask, int factor);

/// Rounds [0, 1] floats to 8 bits: clamp, scale by 255, round half up.
Rgb8Image to_rgb8(const ColorImage& image);

}  // namespace randr
