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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randr/annotate.hpp"
#include "randr/config.hpp"
#include "randr/render.hpp"
#include "randr/texture.hpp"

namespace randr {

/// Persistent render slots: max_count objects of each class, created once
/// and parked below the ground. Staging a scene moves and rescales slots
/// instead of creating objects.
class ObjectPool {
 public:
  explicit ObjectPool(int max_per_class);

  /// Rebinds slots to `scene`'s objects (in object order) and parks the
  /// rest. Throws BadTextureId.
  SceneView stage(const SceneSpec& scene, const TextureLibrary& library);

  int slots_per_class() const { return per_class_; }

 private:
  int per_class_;
  std::array<std::vector<RenderObject>, 3> slots_;
};

/// Text descriptor of an object (the form a simulator spawn request takes).
/// Numbers are written shortest-round-trip, so parsing restores the
/// instance bit for bit.
std::string object_descriptor(const ObjectInstance& object);
ObjectInstance parse_object_descriptor(std::string_view text);

/// Scene state rebuilt from nothing: a fresh texture library and objects
/// created from descriptors. Holds everything the view points at.
struct RespawnedScene {
  RespawnedScene() = default;
  RespawnedScene(const RespawnedScene&) = delete;
  RespawnedScene& operator=(const RespawnedScene&) = delete;
  RespawnedScene(RespawnedScene&&) = default;
  RespawnedScene& operator=(RespawnedScene&&) = default;

  TextureLibrary library;
  std::vector<RenderObject> objects;
  SceneView view;
};
RespawnedScene respawn_scene(const SceneSpec& scene, const LibrarySpec& library_spec);

std::string scene_stem(std::int64_t scene_index);  // "scene_000123"

struct SceneMeta {
  std::int64_t scene_index = 0;
  std::uint64_t seed = 0;
};

struct SamplePaths {
  std::filesystem::path image;       // relative to the output dir
  std::filesystem::path annotation;  // relative to the output dir
  std::filesystem::path png;         // empty unless requested
};

/// Writes images/<stem>.jpg (+ .png), annotations/<stem>.json. Throws
/// IoError with the failing path.
SamplePaths write_sample(const Rgb8Image& image, std::span<const Annotation> annotations,
                         const SceneMeta& meta, const std::filesystem::path& output_dir,
                         int jpeg_quality, bool png);

struct AnnotationDoc {
  std::string image;
  int width = 0;
  int height = 0;
  std::uint64_t scene_seed = 0;
  std::vector<Annotation> objects;

  friend bool operator==(const AnnotationDoc&, const AnnotationDoc&) = default;
};

/// Canonical annotation JSON: fixed key order, reals with 17 significant
/// digits, scene_seed as a decimal string.
std::string annotation_json(const AnnotationDoc& doc);

/// Throws EvalParseError naming the offending field.
AnnotationDoc parse_annotation_json(std::string_view text);

struct ManifestEntry {
  std::int64_t scene_index = 0;
  std::uint64_t seed = 0;
  std::string image;
  std::string annotation;
  std::string png;
};

struct Manifest {
  std::string config_json;  // config snapshot; regenerates the dataset
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::vector<ManifestEntry> entries;
};

std::string manifest_json(const Manifest& manifest);
Manifest parse_manifest_json(std::string_view text);

/// Per-run timing, split so startup cost is visible next to steady state.
struct GenerationTiming {
  double startup_seconds = 0.0;
  double scenes_seconds = 0.0;
  double total_seconds = 0.0;
};

struct GenerationResult {
  Manifest manifest;
  GenerationTiming timing;
};

/// Samples, renders, annotates and writes scenes 0..num_scenes-1 into
/// config.output_dir, scenes in parallel. Annotations and PNGs are
/// bit-identical across strategies and worker counts.
GenerationResult generate_dataset(const PipelineConfig& config, GenerationStrategy strategy,
                                  unsigned workers);

struct StrategyThroughput {
  GenerationStrategy strategy = GenerationStrategy::Pool;
  int scenes = 0;
  double wall_seconds = 0.0;
  double startup_seconds = 0.0;
  double scenes_per_second = 0.0;
  double per_scene_seconds = 0.0;  // excluding startup
};

struct ThroughputReport {
  std::vector<StrategyThroughput> results;
  double pool_over_respawn = 0.0;  // scenes/sec ratio, 0 if either missing
  unsigned workers = 1;
};

/// Times generate_dataset for each strategy on num_scenes scenes (>= 50),
/// writing into scratch_dir/<strategy>.
ThroughputReport bench(const PipelineConfig& config, std::span<const GenerationStrategy> strategies,
                       int num_scenes, const std::filesystem::path& scratch_dir, unsigned workers);

std::string throughput_json(const ThroughputReport& report);
std::string throughput_table(const ThroughputReport& report);

std::string tool_version();

}  // namespace randr
