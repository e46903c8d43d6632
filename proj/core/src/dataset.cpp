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

#include "randr/dataset.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "randr/errors.hpp"
#include "randr/image_io.hpp"
#include "randr/parallel.hpp"
#include "randr/sampler.hpp"

#ifndef RANDR_VERSION
#define RANDR_VERSION "0.0.0"
#endif

namespace randr {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const TextureImage* texture_at(const TextureLibrary& library, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= library.size()) {
    throw BadTextureId("texture id " + std::to_string(id) + " outside library of " +
                       std::to_string(library.size()));
  }
  return &library.images[static_cast<std::size_t>(id)];
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ValidationError("object descriptor: bad number '" + std::string(text) + "'");
  }
  return v;
}

// Text between <tag> and </tag>.
std::string_view element(std::string_view text, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  const auto b = text.find(open);
  const auto e = text.find(close);
  if (b == std::string_view::npos || e == std::string_view::npos || e < b) {
    throw ValidationError("object descriptor: missing <" + std::string(tag) + ">");
  }
  return text.substr(b + open.size(), e - b - open.size());
}

std::string_view attribute(std::string_view text, std::string_view name) {
  const std::string key = " " + std::string(name) + "=\"";
  const auto b = text.find(key);
  if (b == std::string_view::npos) {
    throw ValidationError("object descriptor: missing attribute " + std::string(name));
  }
  const auto start = b + key.size();
  const auto e = text.find('"', start);
  return text.substr(start, e - start);
}

std::vector<double> numbers(std::string_view text, std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto next = text.find(' ', pos);
    const auto token = text.substr(pos, next == std::string_view::npos ? text.size() - pos : next - pos);
    if (!token.empty()) out.push_back(parse_number(token));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (out.size() != expected) throw ValidationError("object descriptor: wrong number count");
  return out;
}

std::string escape_json(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void append_real17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw EvalParseError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw EvalParseError(where + ": field '" + key + "' has the wrong type");
  }
}

// Per-worker scratch: a persistent object pool for the Pool strategy.
struct WorkerState {
  std::unique_ptr<ObjectPool> pool;
};

}  // namespace

ObjectPool::ObjectPool(int max_per_class) : per_class_(max_per_class) {
  for (auto& slots : slots_) {
    slots.resize(static_cast<std::size_t>(max_per_class));
    for (RenderObject& slot : slots) slot.park();
  }
}

SceneView ObjectPool::stage(const SceneSpec& scene, const TextureLibrary& library) {
  for (auto& slots : slots_) {
    for (RenderObject& slot : slots) {
      if (slot.active()) slot.park();
    }
  }
  SceneView view;
  view.camera = scene.camera;
  view.light = scene.light;
  view.ground_texture = texture_at(library, scene.ground_texture_id);
  std::array<int, 3> used{};
  for (const ObjectInstance& obj : scene.objects) {
    const int c = class_code(obj.shape);
    if (used[static_cast<std::size_t>(c)] >= per_class_) {
      throw ValidationError("object pool: more than " + std::to_string(per_class_) + " " +
                            std::string(to_string(obj.shape)) + " objects in one scene");
    }
    RenderObject& slot = slots_[static_cast<std::size_t>(c)][static_cast<std::size_t>(used[c]++)];
    slot.bind(obj, texture_at(library, obj.texture_id));
    view.objects.push_back(&slot);
  }
  return view;
}

std::string object_descriptor(const ObjectInstance& o) {
  std::string s = "<model id=\"" + std::to_string(o.id) + "\" shape=\"" +
                  std::string(to_string(o.shape)) + "\"><pose>";
  const Quat& q = o.pose.orientation;
  const double pose[7] = {o.pose.position.x(), o.pose.position.y(), o.pose.position.z(),
                          q.w(), q.x(), q.y(), q.z()};
  for (int i = 0; i < 7; ++i) {
    if (i > 0) s += ' ';
    append_number(s, pose[i]);
  }
  s += "</pose><size>";
  for (int i = 0; i < 3; ++i) {
    if (i > 0) s += ' ';
    append_number(s, o.dims[i]);
  }
  s += "</size><texture>" + std::to_string(o.texture_id) + "</texture></model>";
  return s;
}

ObjectInstance parse_object_descriptor(std::string_view text) {
  ObjectInstance o;
  o.id = static_cast<int>(parse_number(attribute(text, "id")));
  const auto shape = parse_shape_class(attribute(text, "shape"));
  if (!shape) throw ValidationError("object descriptor: unknown shape");
  o.shape = *shape;
  const auto pose = numbers(element(text, "pose"), 7);
  o.pose.position = Vec3(pose[0], pose[1], pose[2]);
  o.pose.orientation = Quat(pose[3], pose[4], pose[5], pose[6]);
  const auto size = numbers(element(text, "size"), 3);
  o.dims = Vec3(size[0], size[1], size[2]);
  o.texture_id = static_cast<int>(parse_number(element(text, "texture")));
  return o;
}

RespawnedScene respawn_scene(const SceneSpec& scene, const LibrarySpec& library_spec) {
  RespawnedScene out;
  out.library = build_texture_library(library_spec, 1);
  out.objects.reserve(scene.objects.size());
  for (const ObjectInstance& obj : scene.objects) {
    const ObjectInstance spawned = parse_object_descriptor(object_descriptor(obj));
    out.objects.emplace_back(spawned, texture_at(out.library, spawned.texture_id));
  }
  out.view.camera = scene.camera;
  out.view.light = scene.light;
  out.view.ground_texture = texture_at(out.library, scene.ground_texture_id);
  for (const RenderObject& obj : out.objects) out.view.objects.push_back(&obj);
  return out;
}

std::string scene_stem(std::int64_t scene_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%06lld", static_cast<long long>(scene_index));
  return buf;
}

std::string annotation_json(const AnnotationDoc& doc) {
  std::string s = "{\"image\": \"" + escape_json(doc.image) + "\", \"width\": " +
                  std::to_string(doc.width) + ", \"height\": " + std::to_string(doc.height) +
                  ", \"scene_seed\": \"" + std::to_string(doc.scene_seed) + "\", \"objects\": [";
  for (std::size_t i = 0; i < doc.objects.size(); ++i) {
    const Annotation& a = doc.objects[i];
    if (i > 0) s += ", ";
    s += "{\"id\": " + std::to_string(a.object_id) + ", \"class\": \"" +
         std::string(to_string(a.shape)) + "\", \"bbox\": [";
    const double v[4] = {a.bbox.xmin, a.bbox.ymin, a.bbox.xmax, a.bbox.ymax};
    for (int k = 0; k < 4; ++k) {
      if (k > 0) s += ", ";
      append_real17(s, v[k]);
    }
    s += "], \"visible_pixels\": " + std::to_string(a.visible_pixels) + "}";
  }
  s += "]}\n";
  return s;
}

AnnotationDoc parse_annotation_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw EvalParseError(std::string("annotation: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw EvalParseError("annotation: expected an object");
  AnnotationDoc doc;
  doc.image = field<std::string>(root, "image", "annotation");
  doc.width = field<int>(root, "width", "annotation");
  doc.height = field<int>(root, "height", "annotation");
  const auto seed = field<std::string>(root, "scene_seed", "annotation");
  try {
    doc.scene_seed = std::stoull(seed);
  } catch (const std::exception&) {
    throw EvalParseError("annotation: scene_seed is not an unsigned integer");
  }
  const auto objects = field<json>(root, "objects", "annotation");
  if (!objects.is_array()) throw EvalParseError("annotation: objects must be an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string where = "annotation.objects[" + std::to_string(i) + "]";
    const json& o = objects[i];
    Annotation a;
    a.object_id = field<int>(o, "id", where);
    const auto cls = field<std::string>(o, "class", where);
    const auto shape = parse_shape_class(cls);
    if (!shape) throw UnknownClass(where + ": unknown class '" + cls + "'");
    a.shape = *shape;
    const auto box = field<std::vector<double>>(o, "bbox", where);
    if (box.size() != 4) throw EvalParseError(where + ": bbox needs 4 numbers");
    a.bbox = {box[0], box[1], box[2], box[3]};
    a.visible_pixels = field<std::int64_t>(o, "visible_pixels", where);
    doc.objects.push_back(a);
  }
  return doc;
}

SamplePaths write_sample(const Rgb8Image& image, std::span<const Annotation> annotations,
                         const SceneMeta& meta, const fs::path& output_dir, int jpeg_quality,
                         bool png) {
  std::error_code ec;
  fs::create_directories(output_dir / "images", ec);
  if (ec) throw IoError("cannot create " + (output_dir / "images").string() + ": " + ec.message());
  fs::create_directories(output_dir / "annotations", ec);
  if (ec) {
    throw IoError("cannot create " + (output_dir / "annotations").string() + ": " + ec.message());
  }
  const std::string stem = scene_stem(meta.scene_index);
  SamplePaths paths;
  paths.image = fs::path("images") / (stem + ".jpg");
  paths.annotation = fs::path("annotations") / (stem + ".json");
  write_jpeg(output_dir / paths.image, image, jpeg_quality);
  if (png) {
    paths.png = fs::path("images") / (stem + ".png");
    write_png(output_dir / paths.png, image);
  }
  AnnotationDoc doc;
  doc.image = stem + ".jpg";
  doc.width = image.width;
  doc.height = image.height;
  doc.scene_seed = meta.seed;
  doc.objects.assign(annotations.begin(), annotations.end());
  write_text(output_dir / paths.annotation, annotation_json(doc));
  return paths;
}

std::string manifest_json(const Manifest& m) {
  json root;
  root["tool_version"] = m.tool_version;
  root["master_seed"] = m.master_seed;
  root["config"] = json::parse(m.config_json);
  json scenes = json::array();
  for (const ManifestEntry& e : m.entries) {
    json entry = {{"index", e.scene_index},
                  {"seed", std::to_string(e.seed)},
                  {"image", e.image},
                  {"annotation", e.annotation}};
    if (!e.png.empty()) entry["png"] = e.png;
    scenes.push_back(entry);
  }
  root["scenes"] = scenes;
  return root.dump(2) + "\n";
}

Manifest parse_manifest_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("manifest: malformed JSON: ") + e.what());
  }
  Manifest m;
  try {
    m.tool_version = root.at("tool_version").get<std::string>();
    m.master_seed = root.at("master_seed").get<std::uint64_t>();
    m.config_json = root.at("config").dump(2);
    for (const json& e : root.at("scenes")) {
      ManifestEntry entry;
      entry.scene_index = e.at("index").get<std::int64_t>();
      entry.seed = std::stoull(e.at("seed").get<std::string>());
      entry.image = e.at("image").get<std::string>();
      entry.annotation = e.at("annotation").get<std::string>();
      if (e.contains("png")) entry.png = e.at("png").get<std::string>();
      m.entries.push_back(entry);
    }
  } catch (const std::exception& e) {
    throw ConfigParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

std::string tool_version() { return RANDR_VERSION; }

GenerationResult generate_dataset(const PipelineConfig& config, GenerationStrategy strategy,
                                  unsigned workers) {
  config.validate();
  workers = resolve_workers(workers);
  const auto start = Clock::now();
  const SamplerConfig sampler = config.effective_sampler();
  const LibrarySpec library_spec = config.library_spec();
  const RenderSettings render_settings{config.render.background};
  AnnotatorSettings annotator = config.annotator;
  annotator.downscale = config.render.downscale;

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());

  // Pool: textures loaded once at launch, object slots spawned once per
  // worker and parked below the ground.
  TextureLibrary library;
  std::vector<WorkerState> state(workers);
  if (strategy == GenerationStrategy::Pool) {
    library = build_texture_library(library_spec, workers);
    for (WorkerState& w : state) w.pool = std::make_unique<ObjectPool>(sampler.max_count);
  }
  GenerationResult result;
  result.timing.startup_seconds = seconds_since(start);

  const auto n = static_cast<std::size_t>(config.num_scenes);
  std::vector<ManifestEntry> entries(n);
  const auto scenes_start = Clock::now();
  parallel_for_worker(n, workers, [&](unsigned worker, std::size_t i) {
    const SceneSpec scene = sample_scene(sampler, config.master_seed, static_cast<std::int64_t>(i));
    RenderOutput frame;
    std::vector<Annotation> annotations;
    if (strategy == GenerationStrategy::Pool) {
      const SceneView view = state[worker].pool->stage(scene, library);
      frame = render(view, render_settings, 1);
      annotations = annotate(frame.id_mask, view, annotator);
    } else {
      const RespawnedScene spawned = respawn_scene(scene, library_spec);
      frame = render(spawned.view, render_settings, 1);
      annotations = annotate(frame.id_mask, spawned.view, annotator);
    }
    const Rgb8Image image = to_rgb8(downscale(frame.color, config.render.downscale));
    const SamplePaths paths = write_sample(image, annotations, {scene.scene_index, scene.seed},
                                           config.output_dir, config.render.jpeg_quality, config.png);
    entries[i] = {scene.scene_index, scene.seed, paths.image.generic_string(),
                  paths.annotation.generic_string(), paths.png.generic_string()};
  });
  result.timing.scenes_seconds = seconds_since(scenes_start);

  result.manifest.config_json = config_to_json(config);
  result.manifest.master_seed = config.master_seed;
  result.manifest.tool_version = tool_version();
  result.manifest.entries = std::move(entries);
  write_text(config.output_dir / "manifest.json", manifest_json(result.manifest));
  result.timing.total_seconds = seconds_since(start);
  return result;
}

ThroughputReport bench(const PipelineConfig& config, std::span<const GenerationStrategy> strategies,
                       int num_scenes, const fs::path& scratch_dir, unsigned workers) {
  if (num_scenes < 50) throw ValidationError("bench needs at least 50 scenes for stable timing");
  if (strategies.empty()) throw ValidationError("bench needs at least one strategy");
  ThroughputReport report;
  report.workers = resolve_workers(workers);
  for (GenerationStrategy s : strategies) {
    PipelineConfig cfg = config;
    cfg.num_scenes = num_scenes;
    cfg.strategy = s;
    cfg.output_dir = scratch_dir / std::string(to_string(s));
    std::error_code ec;
    fs::remove_all(cfg.output_dir, ec);
    const GenerationResult run = generate_dataset(cfg, s, report.workers);
    StrategyThroughput t;
    t.strategy = s;
    t.scenes = num_scenes;
    t.wall_seconds = run.timing.total_seconds;
    t.startup_seconds = run.timing.startup_seconds;
    t.scenes_per_second = num_scenes / run.timing.total_seconds;
    t.per_scene_seconds = run.timing.scenes_seconds / num_scenes;
    report.results.push_back(t);
  }
  const StrategyThroughput* pool = nullptr;
  const StrategyThroughput* respawn = nullptr;
  for (const auto& r : report.results) {
    (r.strategy == GenerationStrategy::Pool ? pool : respawn) = &r;
  }
  if (pool != nullptr && respawn != nullptr) {
    report.pool_over_respawn = pool->scenes_per_second / respawn->scenes_per_second;
  }
  return report;
}

std::string throughput_json(const ThroughputReport& report) {
  json root;
  root["workers"] = report.workers;
  json results = json::array();
  for (const auto& r : report.results) {
    results.push_back({{"strategy", std::string(to_string(r.strategy))},
                       {"scenes", r.scenes},
                       {"wall_seconds", r.wall_seconds},
                       {"startup_seconds", r.startup_seconds},
                       {"scenes_per_second", r.scenes_per_second},
                       {"per_scene_seconds", r.per_scene_seconds}});
  }
  root["results"] = results;
  root["pool_over_respawn"] = report.pool_over_respawn;
  return root.dump(2) + "\n";
}

std::string throughput_table(const ThroughputReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-9s %7s %10s %10s %11s %12s\n", "strategy", "scenes",
                "wall[s]", "startup[s]", "scenes/s", "per-scene[s]");
  out << line;
  for (const auto& r : report.results) {
    std::snprintf(line, sizeof(line), "%-9s %7d %10.3f %10.3f %11.3f %12.4f\n",
                  std::string(to_string(r.strategy)).c_str(), r.scenes, r.wall_seconds,
                  r.startup_seconds, r.scenes_per_second, r.per_scene_seconds);
    out << line;
  }
  if (report.pool_over_respawn > 0.0) {
    std::snprintf(line, sizeof(line), "pool/respawn speedup: %.3fx (%u workers)\n",
                  report.pool_over_respawn, report.workers);
    out << line;
  }
  return out.str();
}

}  // namespace randr
