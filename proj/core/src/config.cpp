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

#include "randr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "randr/errors.hpp"

namespace randr {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigParseError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw UnknownField("unknown field '" + (where.empty() ? "" : where + ".") + item.key() + "'");
    }
  }
}

std::string field_path(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw ConfigParseError(field_path(where, key) + ": expected an integer");
      const auto v = it->get<std::int64_t>();
      if (v < INT32_MIN || v > INT32_MAX) throw ValidationError(field_path(where, key) + ": out of range");
      out = static_cast<int>(v);
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigParseError(field_path(where, key) + ": expected a number");
      out = it->get<double>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigParseError(field_path(where, key) + ": expected a boolean");
      out = it->get<bool>();
    } else {
      if (!it->is_string()) throw ConfigParseError(field_path(where, key) + ": expected a string");
      out = it->get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigParseError(field_path(where, key) + ": " + e.what());
  }
}

std::vector<double> read_numbers(const json& obj, const char* key, std::size_t n,
                                 const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != n) {
    throw ConfigParseError(field_path(where, key) + ": expected an array of " + std::to_string(n) +
                           " numbers");
  }
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigParseError(field_path(where, key) + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void read_range(const json& obj, const char* key, Range& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const auto v = read_numbers(obj, key, 2, where);
  out = {v[0], v[1]};
}

void read_int_range(const json& obj, const char* key, int& lo, int& hi, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ConfigParseError(field_path(where, key) + ": expected [min, max] integers");
  }
  lo = v[0].get<int>();
  hi = v[1].get<int>();
}

void read_vec3(const json& obj, const char* key, Vec3& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const auto v = read_numbers(obj, key, 3, where);
  out = Vec3(v[0], v[1], v[2]);
}

void read_color(const json& obj, const char* key, Rgb& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const auto v = read_numbers(obj, key, 3, where);
  out = {static_cast<float>(v[0]), static_cast<float>(v[1]), static_cast<float>(v[2])};
}

json range_json(const Range& r) { return json::array({r.min, r.max}); }
json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void read_shell(const json& obj, MovingCamera& shell, const std::string& where) {
  read_range(obj, "radius", shell.radius, where);
  read_range(obj, "elevation", shell.elevation, where);
  read_range(obj, "azimuth", shell.azimuth, where);
}

void parse_camera(const json& obj, SamplerConfig& s) {
  const std::string where = "sampler.camera";
  check_keys(obj, {"mode", "radius", "elevation", "azimuth", "eye", "target", "position", "orientation"},
             where);
  std::string mode = "moving";
  read(obj, "mode", mode, where);
  if (mode == "moving") {
    MovingCamera moving;
    read_shell(obj, moving, where);
    s.camera = moving;
  } else if (mode == "fixed") {
    FixedCamera fixed;
    if (obj.contains("orientation")) {
      Vec3 position = fixed.pose.position;
      read_vec3(obj, "position", position, where);
      const auto q = read_numbers(obj, "orientation", 4, where);  // w, x, y, z
      const Quat quat(q[0], q[1], q[2], q[3]);
      if (std::abs(quat.norm() - 1.0) > 1e-9) {
        throw ValidationError(where + ".orientation must be a unit quaternion");
      }
      fixed.pose.position = position;
      fixed.pose.orientation = quat;
    } else if (obj.contains("eye") || obj.contains("target")) {
      Vec3 eye(0.0, -2.5, 2.0);
      Vec3 target = Vec3::Zero();
      read_vec3(obj, "eye", eye, where);
      read_vec3(obj, "target", target, where);
      try {
        fixed = FixedCamera::looking(eye, target);
      } catch (const DegenerateLookAt& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
    s.camera = fixed;
  } else {
    throw ValidationError(where + ".mode must be 'moving' or 'fixed'");
  }
}

void parse_sampler(const json& obj, SamplerConfig& s) {
  const std::string where = "sampler";
  check_keys(obj,
             {"min_count", "max_count", "rows", "cols", "cell_size", "jitter_fraction", "box_edge",
              "cylinder_radius", "cylinder_length", "sphere_radius", "horizontal_fov", "camera",
              "light"},
             where);
  read(obj, "min_count", s.min_count, where);
  read(obj, "max_count", s.max_count, where);
  read(obj, "rows", s.rows, where);
  read(obj, "cols", s.cols, where);
  read(obj, "cell_size", s.cell_size, where);
  read(obj, "jitter_fraction", s.jitter_fraction, where);
  read_range(obj, "box_edge", s.box_edge, where);
  read_range(obj, "cylinder_radius", s.cylinder_radius, where);
  read_range(obj, "cylinder_length", s.cylinder_length, where);
  read_range(obj, "sphere_radius", s.sphere_radius, where);
  read(obj, "horizontal_fov", s.horizontal_fov, where);
  if (obj.contains("camera")) parse_camera(obj.at("camera"), s);
  if (obj.contains("light")) {
    const json& l = obj.at("light");
    const std::string lw = "sampler.light";
    check_keys(l, {"moves", "radius", "elevation", "azimuth", "position", "intensity", "ambient"}, lw);
    read(l, "moves", s.light.moves, lw);
    read_shell(l, s.light.shell, lw);
    read_vec3(l, "position", s.light.fixed_position, lw);
    read_range(l, "intensity", s.light.intensity, lw);
    read(l, "ambient", s.light.ambient, lw);
  }
}

void parse_textures(const json& obj, TextureConfig& t) {
  const std::string where = "textures";
  check_keys(obj, {"library_size", "resolution", "enabled_patterns", "perlin", "chess"}, where);
  read(obj, "library_size", t.library_size, where);
  read(obj, "resolution", t.resolution, where);
  if (obj.contains("enabled_patterns")) {
    const json& list = obj.at("enabled_patterns");
    if (!list.is_array()) throw ConfigParseError("textures.enabled_patterns: expected an array");
    t.enabled.clear();
    for (const json& name : list) {
      if (!name.is_string()) throw ConfigParseError("textures.enabled_patterns: expected strings");
      const auto family = parse_pattern_family(name.get<std::string>());
      if (!family) {
        throw ValidationError("textures.enabled_patterns: unknown pattern '" +
                              name.get<std::string>() + "'");
      }
      if (std::find(t.enabled.begin(), t.enabled.end(), *family) == t.enabled.end()) {
        t.enabled.push_back(*family);
      }
    }
  }
  if (obj.contains("perlin")) {
    const json& p = obj.at("perlin");
    const std::string pw = "textures.perlin";
    check_keys(p, {"base_frequency", "octaves", "persistence"}, pw);
    read_range(p, "base_frequency", t.ranges.perlin_frequency, pw);
    read_int_range(p, "octaves", t.ranges.perlin_octaves_min, t.ranges.perlin_octaves_max, pw);
    read_range(p, "persistence", t.ranges.perlin_persistence, pw);
  }
  if (obj.contains("chess")) {
    const json& c = obj.at("chess");
    check_keys(c, {"cells_per_side"}, "textures.chess");
    read_int_range(c, "cells_per_side", t.ranges.chess_cells_min, t.ranges.chess_cells_max,
                   "textures.chess");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

std::string_view to_string(GenerationStrategy s) {
  return s == GenerationStrategy::Pool ? "pool" : "respawn";
}

std::optional<GenerationStrategy> parse_strategy(std::string_view name) {
  if (name == "pool") return GenerationStrategy::Pool;
  if (name == "respawn") return GenerationStrategy::Respawn;
  return std::nullopt;
}

std::uint64_t texture_master_seed(std::uint64_t master_seed) {
  return derived_seed(master_seed, 0x7465787475726573ull);  // "textures"
}

SamplerConfig PipelineConfig::effective_sampler() const {
  SamplerConfig s = sampler;
  s.image_width = render.width;
  s.image_height = render.height;
  s.texture_count = textures.library_size;
  return s;
}

LibrarySpec PipelineConfig::library_spec() const {
  LibrarySpec spec;
  spec.count = textures.library_size;
  spec.resolution = textures.resolution;
  spec.enabled = textures.enabled;
  spec.ranges = textures.ranges;
  spec.master_seed = texture_master_seed(master_seed);
  return spec;
}

void PipelineConfig::validate() const {
  require(num_scenes >= 1, "num_scenes must be at least 1");
  require(render.width > 0 && render.height > 0, "render.width and render.height must be positive");
  require(render.downscale >= 1, "render.downscale must be at least 1");
  require(render.width % render.downscale == 0 && render.height % render.downscale == 0,
          "render.width and render.height must be divisible by render.downscale");
  require(render.jpeg_quality >= 1 && render.jpeg_quality <= 100,
          "render.jpeg_quality must lie in [1, 100]");
  for (float c : {render.background.r, render.background.g, render.background.b}) {
    require(c >= 0.0f && c <= 1.0f, "render.background_color channels must lie in [0, 1]");
  }
  require(textures.library_size >= 1, "textures.library_size must be at least 1");
  require(textures.resolution >= 2, "textures.resolution must be at least 2");
  require(!textures.enabled.empty(), "textures.enabled_patterns must not be empty");
  const TextureRanges& r = textures.ranges;
  require(r.perlin_frequency.valid() && r.perlin_frequency.min > 0.0,
          "textures.perlin.base_frequency must be a positive [min, max]");
  require(r.perlin_octaves_min >= 1 && r.perlin_octaves_min <= r.perlin_octaves_max &&
              r.perlin_octaves_max <= 8,
          "textures.perlin.octaves must be [min, max] within [1, 8]");
  require(r.perlin_persistence.valid() && r.perlin_persistence.min > 0.0 &&
              r.perlin_persistence.max <= 1.0,
          "textures.perlin.persistence must be [min, max] within (0, 1]");
  require(r.chess_cells_min >= 2 && r.chess_cells_min <= r.chess_cells_max,
          "textures.chess.cells_per_side must be [min, max] with min >= 2");
  require(annotator.min_visible_pixels >= 0, "annotator.min_visible_pixels must be non-negative");
  effective_sampler().validate();
}

PipelineConfig parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("malformed config JSON: ") + e.what());
  }
  check_keys(root,
             {"master_seed", "num_scenes", "output_dir", "strategy", "png", "render", "sampler",
              "textures", "annotator"},
             "");
  PipelineConfig cfg;
  if (root.contains("master_seed")) {
    const json& seed = root.at("master_seed");
    if (seed.is_number_unsigned()) {
      cfg.master_seed = seed.get<std::uint64_t>();
    } else if (seed.is_string()) {
      try {
        std::size_t used = 0;
        const std::string s = seed.get<std::string>();
        cfg.master_seed = std::stoull(s, &used, 10);
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw ConfigParseError("master_seed: expected an unsigned 64-bit integer");
      }
    } else {
      throw ConfigParseError("master_seed: expected an unsigned 64-bit integer");
    }
  }
  read(root, "num_scenes", cfg.num_scenes, "");
  std::string out_dir = cfg.output_dir.string();
  read(root, "output_dir", out_dir, "");
  cfg.output_dir = out_dir;
  std::string strategy(to_string(cfg.strategy));
  read(root, "strategy", strategy, "");
  const auto parsed = parse_strategy(strategy);
  if (!parsed) throw ValidationError("strategy must be 'pool' or 'respawn'");
  cfg.strategy = *parsed;
  read(root, "png", cfg.png, "");

  if (root.contains("render")) {
    const json& r = root.at("render");
    check_keys(r, {"width", "height", "downscale", "jpeg_quality", "background_color"}, "render");
    read(r, "width", cfg.render.width, "render");
    read(r, "height", cfg.render.height, "render");
    read(r, "downscale", cfg.render.downscale, "render");
    read(r, "jpeg_quality", cfg.render.jpeg_quality, "render");
    read_color(r, "background_color", cfg.render.background, "render");
  }
  if (root.contains("sampler")) parse_sampler(root.at("sampler"), cfg.sampler);
  if (root.contains("textures")) parse_textures(root.at("textures"), cfg.textures);
  if (root.contains("annotator")) {
    const json& a = root.at("annotator");
    check_keys(a, {"min_visible_pixels", "box_mode"}, "annotator");
    int min_visible = static_cast<int>(cfg.annotator.min_visible_pixels);
    read(a, "min_visible_pixels", min_visible, "annotator");
    cfg.annotator.min_visible_pixels = min_visible;
    std::string mode = "modal";
    read(a, "box_mode", mode, "annotator");
    if (mode == "modal") {
      cfg.annotator.mode = BoxMode::Modal;
    } else if (mode == "amodal") {
      cfg.annotator.mode = BoxMode::Amodal;
    } else {
      throw ValidationError("annotator.box_mode must be 'modal' or 'amodal'");
    }
  }
  cfg.annotator.downscale = cfg.render.downscale;
  cfg.validate();
  return cfg;
}

PipelineConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_to_json(const PipelineConfig& cfg) {
  json root;
  root["master_seed"] = cfg.master_seed;
  root["num_scenes"] = cfg.num_scenes;
  root["output_dir"] = cfg.output_dir.string();
  root["strategy"] = std::string(to_string(cfg.strategy));
  root["png"] = cfg.png;
  root["render"] = {
      {"width", cfg.render.width},
      {"height", cfg.render.height},
      {"downscale", cfg.render.downscale},
      {"jpeg_quality", cfg.render.jpeg_quality},
      {"background_color",
       json::array({cfg.render.background.r, cfg.render.background.g, cfg.render.background.b})},
  };

  const SamplerConfig& s = cfg.sampler;
  json camera = std::visit(
      Overloaded{
          [](const MovingCamera& m) -> json {
            return {{"mode", "moving"},
                    {"radius", range_json(m.radius)},
                    {"elevation", range_json(m.elevation)},
                    {"azimuth", range_json(m.azimuth)}};
          },
          [](const FixedCamera& f) -> json {
            const Quat& q = f.pose.orientation;
            return {{"mode", "fixed"},
                    {"position", vec3_json(f.pose.position)},
                    {"orientation", json::array({q.w(), q.x(), q.y(), q.z()})}};
          },
      },
      s.camera);
  root["sampler"] = {
      {"min_count", s.min_count},
      {"max_count", s.max_count},
      {"rows", s.rows},
      {"cols", s.cols},
      {"cell_size", s.cell_size},
      {"jitter_fraction", s.jitter_fraction},
      {"box_edge", range_json(s.box_edge)},
      {"cylinder_radius", range_json(s.cylinder_radius)},
      {"cylinder_length", range_json(s.cylinder_length)},
      {"sphere_radius", range_json(s.sphere_radius)},
      {"horizontal_fov", s.horizontal_fov},
      {"camera", camera},
      {"light",
       {{"moves", s.light.moves},
        {"radius", range_json(s.light.shell.radius)},
        {"elevation", range_json(s.light.shell.elevation)},
        {"azimuth", range_json(s.light.shell.azimuth)},
        {"position", vec3_json(s.light.fixed_position)},
        {"intensity", range_json(s.light.intensity)},
        {"ambient", s.light.ambient}}},
  };

  json enabled = json::array();
  for (PatternFamily f : cfg.textures.enabled) enabled.push_back(std::string(to_string(f)));
  const TextureRanges& r = cfg.textures.ranges;
  root["textures"] = {
      {"library_size", cfg.textures.library_size},
      {"resolution", cfg.textures.resolution},
      {"enabled_patterns", enabled},
      {"perlin",
       {{"base_frequency", range_json(r.perlin_frequency)},
        {"octaves", json::array({r.perlin_octaves_min, r.perlin_octaves_max})},
        {"persistence", range_json(r.perlin_persistence)}}},
      {"chess", {{"cells_per_side", json::array({r.chess_cells_min, r.chess_cells_max})}}},
  };
  root["annotator"] = {
      {"min_visible_pixels", cfg.annotator.min_visible_pixels},
      {"box_mode", cfg.annotator.mode == BoxMode::Modal ? "modal" : "amodal"},
  };
  return root.dump(2);
}

}  // namespace randr
