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
#include <filesystem>
#include <string>
#include <string_view>

#include "randr/annotate.hpp"
#include "randr/render.hpp"
#include "randr/sampler.hpp"
#include "randr/texture.hpp"

namespace randr {

enum class GenerationStrategy : std::uint8_t {
  Pool,     // library and object slots allocated once, mutated per scene
  Respawn,  // textures and object state rebuilt from scratch every scene
};

std::string_view to_string(GenerationStrategy s);
std::optional<GenerationStrategy> parse_strategy(std::string_view name);

struct RenderConfig {
  int width = 1920;
  int height = 1080;
  int downscale = 2;
  int jpeg_quality = 90;
  Rgb background{0.5f, 0.5f, 0.5f};
};

struct TextureConfig {
  int library_size = 500;
  int resolution = 256;
  std::vector<PatternFamily> enabled{kPatternFamilies.begin(), kPatternFamilies.end()};
  TextureRanges ranges;
};

struct PipelineConfig {
  std::uint64_t master_seed = 0;
  int num_scenes = 100;
  RenderConfig render;
  SamplerConfig sampler;
  TextureConfig textures;
  AnnotatorSettings annotator;
  GenerationStrategy strategy = GenerationStrategy::Pool;
  bool png = false;
  std::filesystem::path output_dir = "out";

  /// Sampler with the render size and library size copied in.
  SamplerConfig effective_sampler() const;

  /// Texture library description for this pipeline.
  LibrarySpec library_spec() const;

  /// Throws ValidationError.
  void validate() const;
};

/// Seed namespace for the texture library, kept apart from scene seeds.
std::uint64_t texture_master_seed(std::uint64_t master_seed);

/// Parses a JSON config. Missing fields take defaults; unknown fields at
/// any level throw UnknownField; malformed JSON throws ConfigParseError;
/// range violations throw ValidationError.
PipelineConfig parse_config(const std::filesystem::path& path);
PipelineConfig parse_config_text(std::string_view text);

/// Full config as JSON text (every field explicit); parse_config_text of
/// the result reproduces the config.
std::string config_to_json(const PipelineConfig& config);

}  // namespace randr
