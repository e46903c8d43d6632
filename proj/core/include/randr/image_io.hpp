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

#include <filesystem>

#include "randr/image.hpp"

namespace randr {

/// Baseline JPEG, 4:2:0, fixed encoder settings. Throws IoError.
void write_jpeg(const std::filesystem::path& path, const Rgb8Image& image, int quality);

/// 8-bit RGB PNG with fixed compression settings. Throws IoError.
void write_png(const std::filesystem::path& path, const Rgb8Image& image);

/// Reads an 8-bit RGB PNG. Throws IoError.
Rgb8Image read_png(const std::filesystem::path& path);

/// Decodes a JPEG into 8-bit RGB. Throws IoError.
Rgb8Image read_jpeg(const std::filesystem::path& path);

}  // namespace randr
