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

// Acceptance runner. Usage: randr_acceptance <1..10|all>
// Prints one PASS/FAIL line per criterion; exit status 1 if any fails.
// A single criterion whose only violations are multi-core speed bounds
// exits with kUnmeasurable on hosts with fewer than kBoundCores threads.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "randr/annotate.hpp"
#include "randr/config.hpp"
#include "randr/dataset.hpp"
#include "randr/eval.hpp"
#include "randr/noise.hpp"
#include "randr/parallel.hpp"
#include "randr/render.hpp"
#include "randr/sampler.hpp"
#include "randr/texture.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace randr;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kUnmeasurable = 77;
constexpr unsigned kBoundCores = 4;

struct Outcome {
  bool pass = true;
  bool core_bound_only = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      core_bound_only = false;
      detail << " [violated: " << what << "]";
    }
  }
  // Bounds stated for a machine with kBoundCores cores.
  void check_speed(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

unsigned env_workers() { return resolve_workers(workers_from_env()); }

// Relative path -> bytes for every annotation JSON and PNG sidecar.
std::map<std::string, std::string> outputs(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), root);
    const bool annotation = rel.parent_path() == "annotations" && rel.extension() == ".json";
    if (annotation || rel.extension() == ".png") out[rel.generic_string()] = testing::slurp(e.path());
  }
  return out;
}

PipelineConfig default_config(const fs::path& out, std::uint64_t seed, int scenes) {
  PipelineConfig cfg;
  cfg.master_seed = seed;
  cfg.num_scenes = scenes;
  cfg.output_dir = out;
  return cfg;
}

// Re-renders scene i of `cfg` outside the pipeline.
RenderOutput rerender(const PipelineConfig& cfg, const TextureLibrary& lib, std::int64_t i,
                      SceneSpec* scene_out) {
  const SceneSpec scene = sample_scene(cfg.effective_sampler(), cfg.master_seed, i);
  if (scene_out) *scene_out = scene;
  return render(scene, lib, RenderSettings{cfg.render.background}, env_workers());
}

void c1(Outcome& o) {
  testing::TempDir dir("acc1");
  const auto start = Clock::now();
  auto run = [&](const std::string& name, unsigned workers) {
    PipelineConfig cfg = default_config(dir.path() / name, 42, 50);
    cfg.png = true;
    generate_dataset(cfg, GenerationStrategy::Pool, workers);
    return outputs(cfg.output_dir);
  };
  const auto a = run("first", 1);
  const auto b = run("second", 1);
  const auto c = run("threads8", 8);
  const double secs = since(start);
  o.detail << a.size() << " files; run twice identical=" << (a == b)
           << "; 1 vs 8 workers identical=" << (a == c) << "; " << secs << " s";
  o.check(a.size() == 100, "expected 50 annotations and 50 PNGs");
  o.check(a == b, "repeat run differs");
  o.check(a == c, "worker count changes output");
  o.check_speed(secs <= 180.0, "runtime above 3 min");
}

void c2(Outcome& o) {
  testing::TempDir dir("acc2");
  std::map<std::string, std::string> trees[2];
  double secs[2];
  for (int k = 0; k < 2; ++k) {
    PipelineConfig cfg = default_config(dir.path() / std::to_string(k), 42, 50);
    cfg.png = true;
    const auto s = k == 0 ? GenerationStrategy::Pool : GenerationStrategy::Respawn;
    secs[k] = generate_dataset(cfg, s, env_workers()).timing.total_seconds;
    trees[k] = outputs(cfg.output_dir);
  }
  o.detail << trees[0].size() << " files; identical=" << (trees[0] == trees[1]) << "; pool "
           << secs[0] << " s, respawn " << secs[1] << " s";
  o.check(trees[0].size() == 100, "expected 50 annotations and 50 PNGs");
  o.check(trees[0] == trees[1], "Pool and Respawn outputs differ");
}

void c3(Outcome& o) {
  testing::TempDir dir("acc3");
  PipelineConfig cfg = default_config(dir.path() / "unused", 42, 200);
  const std::vector<GenerationStrategy> both{GenerationStrategy::Pool, GenerationStrategy::Respawn};
  const ThroughputReport r = bench(cfg, both, 200, dir.path(), env_workers());
  o.detail << "pool " << r.results[0].scenes_per_second << " scenes/s, respawn "
           << r.results[1].scenes_per_second << " scenes/s, ratio " << r.pool_over_respawn
           << " (need >= 1.5), workers " << r.workers;
  o.check(r.pool_over_respawn >= 1.5, "Pool below 1.5x Respawn");
}

void c4(Outcome& o) {
  LibrarySpec spec;
  spec.count = 1000;
  spec.resolution = 256;
  spec.enabled = {PatternFamily::Perlin};
  spec.master_seed = texture_master_seed(42);
  auto t = Clock::now();
  const TextureLibrary serial = build_texture_library(spec, 1);
  const double serial_s = since(t);
  t = Clock::now();
  const TextureLibrary parallel = build_texture_library(spec, 4);
  const double parallel_s = since(t);
  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i) {
    identical = serial.images[i] == parallel.images[i];
  }
  const double speedup = serial_s / parallel_s;
  o.detail << "serial " << serial_s << " s, 4 workers " << parallel_s << " s, speedup " << speedup
           << " (need >= 2); bit-identical=" << identical
           << "; hardware threads=" << std::thread::hardware_concurrency();
  o.check(identical, "parallel output differs from serial");
  o.check_speed(speedup >= 2.0, "speedup below 2x");
}

void c5(Outcome& o) {
  std::mt19937_64 gen(20260501);
  double worst = 0.0;
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::Instance inst = oracle::random_instance(gen);
    for (ApMode mode : {ApMode::AllPoint, ApMode::ElevenPoint}) {
      const EvalReport r = evaluate(inst.dets, inst.gts, inst.images, mode);
      const auto want = oracle::brute_force_class_aps(inst, mode == ApMode::ElevenPoint);
      for (std::size_t c = 0; c < 3; ++c) {
        if (want[c] < 0) {
          o.check(r.classes[c].skipped, "class without GT or detections not skipped");
          continue;
        }
        worst = std::max(worst, std::abs(r.classes[c].ap - want[c]));
        ++compared;
      }
    }
  }
  // Worked example: 2 GT, ranking TP, FP, TP.
  const std::vector<std::string> images{"img"};
  const std::vector<GroundTruth> gts{{"img", ShapeClass::Box, {0, 0, 10, 10}},
                                     {"img", ShapeClass::Box, {100, 100, 110, 110}}};
  const std::vector<Detection> dets{{"img", ShapeClass::Box, {0, 0, 10, 10}, 0.9},
                                    {"img", ShapeClass::Box, {50, 50, 60, 60}, 0.8},
                                    {"img", ShapeClass::Box, {100, 100, 110, 110}, 0.7}};
  const double example = evaluate(dets, gts, images).classes[0].ap;
  o.detail.precision(17);
  o.detail << compared << " class APs, max |diff| " << worst << " (need <= 1e-9); example AP "
           << example;
  o.check(worst <= 1e-9, "AP deviates from brute force");
  o.check(example == 5.0 / 6.0, "worked example is not exactly 5/6");
}

void c6(Outcome& o) {
  testing::TempDir dir("acc6");
  const PipelineConfig cfg = default_config(dir.path() / "data", 42, 100);
  generate_dataset(cfg, GenerationStrategy::Pool, env_workers());
  const GroundTruthSet gt = load_ground_truth(cfg.output_dir);
  std::vector<Detection> dets;
  for (const auto& g : gt.boxes) dets.push_back({g.image, g.shape, g.bbox, 1.0});
  testing::spit(dir.path() / "dets.json", detections_json(dets));
  const EvalReport r = evaluate_files(dir.path() / "dets.json", cfg.output_dir, ApMode::AllPoint);
  o.detail.precision(17);
  o.detail << gt.boxes.size() << " boxes; mAP " << r.map << "; per class";
  for (const auto& c : r.classes) {
    o.detail << " " << to_string(c.shape) << "=" << c.ap;
    o.check(!c.skipped && std::abs(c.ap - 1.0) <= 1e-12, "class AP not 1");
  }
  o.check(std::abs(r.map - 1.0) <= 1e-12, "mAP not 1");
}

void c7(Outcome& o) {
  testing::TempDir dir("acc7");
  const PipelineConfig cfg = default_config(dir.path() / "data", 42, 100);
  generate_dataset(cfg, GenerationStrategy::Pool, env_workers());
  const TextureLibrary lib = build_texture_library(cfg.library_spec(), env_workers());
  const int f = cfg.render.downscale;
  std::int64_t boxes = 0, mismatches = 0;
  for (std::int64_t i = 0; i < cfg.num_scenes; ++i) {
    const RenderOutput full = rerender(cfg, lib, i, nullptr);
    IdMask small(full.id_mask.width / f, full.id_mask.height / f, 1);
    for (int y = 0; y < small.height; ++y)
      for (int x = 0; x < small.width; ++x) small.at(x, y) = full.id_mask.at(f * x, f * y);
    const auto scan = oracle::scan_mask(small);
    const AnnotationDoc doc = parse_annotation_json(
        testing::slurp(cfg.output_dir / "annotations" / (scene_stem(i) + ".json")));
    std::size_t expected = 0;
    for (const auto& [id, s] : scan) expected += s.count >= cfg.annotator.min_visible_pixels;
    if (doc.objects.size() != expected) ++mismatches;
    for (const Annotation& a : doc.objects) {
      ++boxes;
      const auto it = scan.find(a.object_id);
      if (it == scan.end() ||
          !(a.bbox == BBox{double(it->second.xmin), double(it->second.ymin),
                           double(it->second.xmax + 1), double(it->second.ymax + 1)}) ||
          a.visible_pixels != it->second.count) {
        ++mismatches;
      }
    }
  }
  o.detail << boxes << " emitted boxes, " << mismatches << " scan mismatches";
  o.check(mismatches == 0, "emitted bbox differs from per-pixel scan");

  // Single unoccluded spheres, fully inside the frame.
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> pos(-0.3, 0.3), radius(0.08, 0.2);
  const SamplerConfig sampler = cfg.effective_sampler();
  double worst = 0.0;
  int spheres = 0;
  for (std::int64_t i = 0; spheres < 20; ++i) {
    SceneSpec scene = sample_scene(sampler, cfg.master_seed, 1000 + i);
    ObjectInstance s;
    s.shape = ShapeClass::Sphere;
    s.dims = Vec3::Constant(radius(gen));
    s.pose = Pose(sampler.grid_center() + Vec3(pos(gen), pos(gen), s.dims.x()), Quat::Identity());
    s.texture_id = scene.objects[0].texture_id;
    scene.objects = {s};
    scene.cells.resize(1);
    const auto analytic = analytic_sphere_bbox(s, scene.camera);
    if (!analytic || analytic->xmin < 0 || analytic->ymin < 0 ||
        analytic->xmax > scene.camera.width || analytic->ymax > scene.camera.height) {
      continue;
    }
    const RenderObject object(s, &lib.images[static_cast<std::size_t>(s.texture_id)]);
    SceneView view{scene.camera, scene.light, {&object},
                   &lib.images[static_cast<std::size_t>(scene.ground_texture_id)]};
    const RenderOutput out = render(view, RenderSettings{cfg.render.background}, env_workers());
    AnnotatorSettings settings = cfg.annotator;
    settings.downscale = f;
    settings.min_visible_pixels = 1;
    const auto anns = annotate(out.id_mask, view, settings);
    if (anns.size() != 1) {
      o.check(false, "sphere scene produced no box");
      continue;
    }
    const BBox& m = anns[0].bbox;
    worst = std::max({worst, std::abs(m.xmin - analytic->xmin / f), std::abs(m.ymin - analytic->ymin / f),
                      std::abs(m.xmax - analytic->xmax / f), std::abs(m.ymax - analytic->ymax / f)});
    ++spheres;
  }
  o.detail << "; " << spheres << " spheres, max edge gap " << worst << " px (need <= 1)";
  o.check(worst <= 1.0, "analytic sphere bbox off by more than 1 px");
}

void c8(Outcome& o) {
  const auto table = PermutationTable::from_seed(20260508);
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> lattice(-1000000, 1000000);
  double lattice_max = 0.0;
  for (int k = 0; k < 10000; ++k) {
    lattice_max = std::max(lattice_max, std::abs(perlin2(lattice(gen), lattice(gen), table)));
  }
  std::uniform_real_distribution<double> anywhere(-1000.0, 1000.0);
  double value_max = 0.0;
  for (int k = 0; k < 1000000; ++k) {
    value_max = std::max(value_max, std::abs(perlin2(anywhere(gen), anywhere(gen), table)));
  }
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  const double h = 1e-6;
  double grad_max = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = std::floor(anywhere(gen)) + frac(gen);
    const double y = std::floor(anywhere(gen)) + frac(gen);
    const NoiseSample s = perlin2_with_gradient(x, y, table);
    const double fdx = (perlin2(x + h, y, table) - perlin2(x - h, y, table)) / (2 * h);
    const double fdy = (perlin2(x, y + h, table) - perlin2(x, y - h, table)) / (2 * h);
    grad_max = std::max({grad_max, std::abs(s.dx - fdx), std::abs(s.dy - fdy)});
  }
  o.detail << "lattice max " << lattice_max << " (need < 1e-12); sample max " << value_max
           << " (need <= 1); gradient max gap " << grad_max << " (need <= 1e-4)";
  o.check(lattice_max < 1e-12, "nonzero at lattice point");
  o.check(value_max <= 1.0, "value outside [-1, 1]");
  o.check(grad_max <= 1e-4, "gradient disagrees with finite difference");
}

void c9(Outcome& o) {
  const PipelineConfig cfg;
  const SamplerConfig sampler = cfg.effective_sampler();
  int out_of_range = 0, cell_violations = 0;
  std::int64_t objects = 0;
  std::array<std::int64_t, 3> classes{};
  for (int i = 0; i < 2000; ++i) {
    const SceneSpec s = sample_scene(sampler, 42, i);
    const auto n = s.objects.size();
    out_of_range += n < 2 || n > 7;
    std::set<std::pair<int, int>> cells;
    for (const GridCell& c : s.cells) cells.insert({c.row, c.col});
    cell_violations += cells.size() != n || s.cells.size() != n;
    for (const auto& obj : s.objects) ++classes[static_cast<std::size_t>(class_code(obj.shape))];
    objects += static_cast<std::int64_t>(n);
  }
  o.detail << objects << " objects; counts outside [2,7]: " << out_of_range
           << "; repeated cells: " << cell_violations << "; class shares";
  for (std::size_t c = 0; c < 3; ++c) {
    const double share = static_cast<double>(classes[c]) / static_cast<double>(objects);
    o.detail << " " << share;
    o.check(std::abs(share - 1.0 / 3.0) <= 0.03, "class share off uniform by more than 0.03");
  }
  o.check(out_of_range == 0, "object count outside [2,7]");
  o.check(cell_violations == 0, "grid cell reused within a scene");
}

void c10(Outcome& o) {
  testing::TempDir dir("acc10");
  const PipelineConfig cfg = default_config(dir.path() / "data", 42, 200);
  const auto start = Clock::now();
  const GenerationResult r = generate_dataset(cfg, GenerationStrategy::Pool, env_workers());
  const double secs = since(start);
  std::size_t jpegs = 0;
  for (const auto& e : fs::directory_iterator(cfg.output_dir / "images")) jpegs += e.path().extension() == ".jpg";
  o.detail << jpegs << " Full-HD scenes in " << secs << " s (need <= 300) on " << env_workers()
           << " workers; startup " << r.timing.startup_seconds << " s";
  o.check(jpegs == 200, "expected 200 images");
  o.check_speed(secs <= 300.0, "slower than 5 min");
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"determinism", c1},          {"strategy equivalence", c2}, {"throughput A/B", c3},
      {"parallel texture build", c4}, {"evaluator oracle", c5},   {"self-detection", c6},
      {"annotation exactness", c7}, {"perlin properties", c8},    {"sampler statistics", c9},
      {"scale check", c10},
  };
  return all;
}

enum class Verdict { Pass, Fail, Unmeasurable };

Verdict run_one(std::size_t k) {
  const Criterion& c = criteria()[k - 1];
  Outcome o;
  const auto start = Clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k, c.name,
              o.detail.str().c_str(), since(start));
  std::fflush(stdout);
  if (o.pass) return Verdict::Pass;
  const unsigned cores = std::thread::hardware_concurrency();
  if (o.core_bound_only && cores < kBoundCores) {
    std::printf("note: criterion %zu states a %u-core bound; this host has %u hardware thread(s)\n", k,
                kBoundCores, cores);
    return Verdict::Unmeasurable;
  }
  return Verdict::Fail;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  if (which == "all") {
    for (std::size_t k = 1; k <= criteria().size(); ++k) ok = run_one(k) == Verdict::Pass && ok;
  } else {
    const int k = std::atoi(which.c_str());
    if (k < 1 || k > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "usage: %s <1..%zu|all>\n", argv[0], criteria().size());
      return 2;
    }
    const Verdict v = run_one(static_cast<std::size_t>(k));
    if (v == Verdict::Unmeasurable) return kUnmeasurable;
    ok = v == Verdict::Pass;
  }
  return ok ? 0 : 1;
}
