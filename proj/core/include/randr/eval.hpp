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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randr/annotate.hpp"
#include "randr/scene.hpp"

namespace randr {

struct Detection {
  std::string image;
  ShapeClass shape = ShapeClass::Box;
  BBox bbox;
  double score = 1.0;
};

struct GroundTruth {
  std::string image;
  ShapeClass shape = ShapeClass::Box;
  BBox bbox;
};

/// Intersection over union; 0 for disjoint boxes.
double iou(const BBox& a, const BBox& b);

struct LabeledDetection {
  std::size_t index = 0;  // position in the input detection list
  ShapeClass shape = ShapeClass::Box;
  double score = 0.0;
  bool true_positive = false;
};

struct MatchResult {
  std::vector<LabeledDetection> labeled;  // per class, descending score
  std::array<std::int64_t, 3> gt_counts{};
};

/// One-to-one greedy matching. Per class, detections are taken in
/// descending score (stable for ties); each becomes TP by consuming the
/// unmatched same-image same-class GT of highest IoU >= threshold (first
/// such GT on IoU ties), else FP.
MatchResult match_detections(std::span<const Detection> detections,
                             std::span<const GroundTruth> ground_truth, double threshold = 0.5);

enum class ApMode : std::uint8_t { AllPoint, ElevenPoint };

std::string_view to_string(ApMode mode);
std::optional<ApMode> parse_ap_mode(std::string_view name);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// Cumulative (recall, precision) after each ranked detection.
std::vector<PrPoint> pr_curve(std::span<const LabeledDetection> ranked, std::int64_t gt_count);

/// AP for one class from detections already ranked by descending score.
/// All-point: sum over ranks of (R_i - R_{i-1}) * max precision at recall
/// >= R_i. Eleven-point: mean over r in {0, .1, .., 1} of the same
/// envelope. 0 when gt_count == 0.
double average_precision(std::span<const LabeledDetection> ranked, std::int64_t gt_count,
                         ApMode mode = ApMode::AllPoint);

struct ClassReport {
  ShapeClass shape = ShapeClass::Box;
  double ap = 0.0;
  bool skipped = false;  // no GT and no detections: left out of mAP
  std::int64_t gt = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::vector<PrPoint> pr;
};

struct EvalReport {
  ApMode mode = ApMode::AllPoint;
  double iou_threshold = 0.5;
  std::array<ClassReport, 3> classes;
  double map = 0.0;  // mean AP over non-skipped classes
};

/// Throws ImageIdMismatch when a detection names an image with no ground
/// truth entry. `known_images` lists every GT image, including empty ones.
EvalReport evaluate(std::span<const Detection> detections,
                    std::span<const GroundTruth> ground_truth,
                    std::span<const std::string> known_images, ApMode mode = ApMode::AllPoint,
                    double iou_threshold = 0.5);

/// Reads `{"detections": [...]}`. Throws EvalParseError with the entry
/// index and field, UnknownClass for unrecognized class names.
std::vector<Detection> parse_detections_json(std::string_view text);
std::string detections_json(std::span<const Detection> detections);

struct GroundTruthSet {
  std::vector<GroundTruth> boxes;
  std::vector<std::string> images;
};

/// Loads annotations/*.json from a dataset directory (or a directory of
/// annotation files).
GroundTruthSet load_ground_truth(const std::filesystem::path& dataset_dir);

/// File-level evaluation.
EvalReport evaluate_files(const std::filesystem::path& detections_file,
                          const std::filesystem::path& dataset_dir, ApMode mode);

std::string report_json(const EvalReport& report);
EvalReport parse_report_json(std::string_view text);

/// `recall,precision` rows in threshold order.
std::string pr_csv(const ClassReport& report);

/// Static SVG with one PR polyline per class.
std::string pr_svg(const EvalReport& report);

}  // namespace randr
