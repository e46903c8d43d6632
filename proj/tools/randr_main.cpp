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

// randr: synthetic shape-detection dataset generator and evaluator.
//
//   randr generate --config C [--strategy pool|respawn] [--png] [--disable-texture T]...
//   randr bench    --config C --scenes N
//   randr textures --config C --count K --out DIR
//   randr eval     --gt DIR --dets FILE [--ap-mode allpoint|11point] --out REPORT
//   randr pr-curve --report REPORT --out DIR
//
// Exit codes: 0 success, 2 config error, 3 I/O error, 4 evaluation input error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randr/config.hpp"
#include "randr/dataset.hpp"
#include "randr/errors.hpp"
#include "randr/eval.hpp"
#include "randr/image_io.hpp"
#include "randr/parallel.hpp"
#include "randr/texture.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitEval = 4;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw randr::IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw randr::IoError("cannot write " + path.string());
  out << text;
  if (!out) throw randr::IoError("write failed: " + path.string());
}

randr::PipelineConfig load_config(const std::string& path,
                                  const std::vector<std::string>& disabled) {
  randr::PipelineConfig cfg = randr::parse_config(path);
  for (const std::string& name : disabled) {
    const auto family = randr::parse_pattern_family(name);
    if (!family) throw randr::ValidationError("--disable-texture: unknown pattern '" + name + "'");
    auto& enabled = cfg.textures.enabled;
    enabled.erase(std::remove(enabled.begin(), enabled.end(), *family), enabled.end());
  }
  cfg.validate();
  return cfg;
}

int run_generate(const std::string& config_path, const std::string& strategy_name, bool png,
                 const std::vector<std::string>& disabled, const std::string& out_override) {
  randr::PipelineConfig cfg = load_config(config_path, disabled);
  if (!strategy_name.empty()) cfg.strategy = *randr::parse_strategy(strategy_name);
  if (png) cfg.png = true;
  if (!out_override.empty()) cfg.output_dir = out_override;
  const unsigned workers = randr::workers_from_env();
  const auto result = randr::generate_dataset(cfg, cfg.strategy, workers);
  std::printf("generated %zu scenes into %s (%s, %u workers) in %.2f s (startup %.2f s)\n",
              result.manifest.entries.size(), cfg.output_dir.string().c_str(),
              std::string(randr::to_string(cfg.strategy)).c_str(), workers,
              result.timing.total_seconds, result.timing.startup_seconds);
  return 0;
}

int run_bench(const std::string& config_path, int scenes, const std::string& out,
              const std::string& scratch) {
  const randr::PipelineConfig cfg = load_config(config_path, {});
  const std::vector<randr::GenerationStrategy> strategies{randr::GenerationStrategy::Pool,
                                                          randr::GenerationStrategy::Respawn};
  const fs::path scratch_dir =
      scratch.empty() ? fs::temp_directory_path() / "randr_bench" : fs::path(scratch);
  const auto report =
      randr::bench(cfg, strategies, scenes, scratch_dir, randr::workers_from_env());
  std::cout << randr::throughput_table(report);
  if (out.empty()) {
    std::cout << randr::throughput_json(report);
  } else {
    write_file(out, randr::throughput_json(report));
  }
  return 0;
}

int run_textures(const std::string& config_path, int count, const std::string& out) {
  const randr::PipelineConfig cfg = load_config(config_path, {});
  if (count < 1) throw randr::ValidationError("--count must be at least 1");
  randr::LibrarySpec spec = cfg.library_spec();
  spec.count = count;
  const auto library = randr::build_texture_library(spec, randr::workers_from_env());
  fs::create_directories(out);
  for (std::size_t i = 0; i < library.size(); ++i) {
    const auto& tex = library.images[i];
    randr::Rgb8Image image(tex.width(), tex.height(), 3);
    std::copy(tex.bytes().begin(), tex.bytes().end(), image.data.begin());
    char name[64];
    std::snprintf(name, sizeof(name), "texture_%06zu_%s.png", i,
                  std::string(randr::to_string(randr::family_of(library.patterns[i]))).c_str());
    randr::write_png(fs::path(out) / name, image);
  }
  std::printf("wrote %zu textures to %s\n", library.size(), out.c_str());
  return 0;
}

int run_eval(const std::string& gt, const std::string& dets, const std::string& mode_name,
             const std::string& out) {
  const auto mode = randr::parse_ap_mode(mode_name);
  const randr::EvalReport report = randr::evaluate_files(dets, gt, *mode);
  write_file(out, randr::report_json(report));
  std::printf("AP mode %s, IoU %.2f\n", std::string(randr::to_string(report.mode)).c_str(),
              report.iou_threshold);
  std::printf("%-9s %8s %6s %6s %6s\n", "class", "AP", "GT", "TP", "FP");
  for (const auto& c : report.classes) {
    std::printf("%-9s %8.4f %6lld %6lld %6lld%s\n", std::string(randr::to_string(c.shape)).c_str(),
                c.ap, static_cast<long long>(c.gt), static_cast<long long>(c.tp),
                static_cast<long long>(c.fp), c.skipped ? "  (skipped)" : "");
  }
  std::printf("mAP %.6f\n", report.map);
  return 0;
}

int run_pr_curve(const std::string& report_path, const std::string& out) {
  const randr::EvalReport report = randr::parse_report_json(read_file(report_path));
  fs::create_directories(out);
  for (const auto& c : report.classes) {
    write_file(fs::path(out) / ("pr_" + std::string(randr::to_string(c.shape)) + ".csv"),
               randr::pr_csv(c));
  }
  write_file(fs::path(out) / "pr_curves.svg", randr::pr_svg(report));
  std::printf("wrote PR curves to %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randr: domain-randomized synthetic shape datasets and detection metrics"};
  app.require_subcommand(1);
  app.footer("RANDR_THREADS sets the worker count (0 or unset = all cores).");

  std::string config_path;
  std::string strategy;
  bool png = false;
  std::vector<std::string> disabled;
  std::string out_dir;
  auto* generate = app.add_subcommand("generate", "Render and annotate a dataset");
  generate->add_option("--config", config_path, "Pipeline JSON config")->required()->check(CLI::ExistingFile);
  generate->add_option("--strategy", strategy, "Scene strategy (overrides config)")
      ->check(CLI::IsMember({"pool", "respawn"}));
  generate->add_flag("--png", png, "Also write lossless PNG sidecars");
  generate->add_option("--disable-texture", disabled, "Drop a texture family (repeatable)")
      ->check(CLI::IsMember({"flat", "gradient", "chess", "perlin"}));
  generate->add_option("--out", out_dir, "Output directory (overrides config)");

  int scenes = 200;
  std::string bench_out;
  std::string scratch;
  auto* bench = app.add_subcommand("bench", "Time pool vs respawn scene generation");
  bench->add_option("--config", config_path, "Pipeline JSON config")->required()->check(CLI::ExistingFile);
  bench->add_option("--scenes", scenes, "Scenes per strategy (>= 50)")->required();
  bench->add_option("--out", bench_out, "Write the JSON report here");
  bench->add_option("--scratch", scratch, "Scratch directory for generated files");

  int count = 16;
  std::string tex_out;
  auto* textures = app.add_subcommand("textures", "Dump sample library textures as PNG");
  textures->add_option("--config", config_path, "Pipeline JSON config")->required()->check(CLI::ExistingFile);
  textures->add_option("--count", count, "Number of textures")->required();
  textures->add_option("--out", tex_out, "Output directory")->required();

  std::string gt_dir;
  std::string dets;
  std::string ap_mode = "allpoint";
  std::string report_out;
  auto* eval = app.add_subcommand("eval", "Per-class AP and mAP at IoU 0.5");
  eval->add_option("--gt", gt_dir, "Dataset directory with annotations/")->required();
  eval->add_option("--dets", dets, "Detections JSON")->required();
  eval->add_option("--ap-mode", ap_mode, "AP interpolation")->check(CLI::IsMember({"allpoint", "11point"}));
  eval->add_option("--out", report_out, "Report JSON path")->required();

  std::string report_path;
  std::string pr_out;
  auto* pr = app.add_subcommand("pr-curve", "Export PR curves (CSV + SVG) from a report");
  pr->add_option("--report", report_path, "Report JSON from eval")->required();
  pr->add_option("--out", pr_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(config_path, strategy, png, disabled, out_dir);
    if (*bench) return run_bench(config_path, scenes, bench_out, scratch);
    if (*textures) return run_textures(config_path, count, tex_out);
    if (*eval) return run_eval(gt_dir, dets, ap_mode, report_out);
    if (*pr) return run_pr_curve(report_path, pr_out);
  } catch (const randr::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const randr::EmptyPatternSet& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const randr::EvalInputError& e) {
    std::fprintf(stderr, "evaluation input error: %s\n", e.what());
    return kExitEval;
  } catch (const randr::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
