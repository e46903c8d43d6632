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

#include "randr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "randr/dataset.hpp"
#include "randr/errors.hpp"

namespace randr {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
  const double ih = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

MatchResult match_detections(std::span<const Detection> detections,
                             std::span<const GroundTruth> ground_truth, double threshold) {
  MatchResult result;
  // (image, class) -> GT indices
  std::map<std::pair<std::string, int>, std::vector<std::size_t>> gt_index;
  for (std::size_t g = 0; g < ground_truth.size(); ++g) {
    const GroundTruth& gt = ground_truth[g];
    gt_index[{gt.image, class_code(gt.shape)}].push_back(g);
    ++result.gt_counts[static_cast<std::size_t>(class_code(gt.shape))];
  }
  std::vector<bool> matched(ground_truth.size(), false);

  for (ShapeClass shape : kShapeClasses) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < detections.size(); ++i) {
      if (detections[i].shape == shape) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return detections[a].score > detections[b].score;
    });
    for (const std::size_t i : order) {
      const Detection& det = detections[i];
      LabeledDetection label{i, shape, det.score, false};
      const auto it = gt_index.find({det.image, class_code(shape)});
      if (it != gt_index.end()) {
        double best_iou = -1.0;
        std::size_t best = 0;
        for (const std::size_t g : it->second) {
          if (matched[g]) continue;
          const double v = iou(det.bbox, ground_truth[g].bbox);
          if (v >= threshold && v > best_iou) {
            best_iou = v;
            best = g;
          }
        }
        if (best_iou >= 0.0) {
          matched[best] = true;
          label.true_positive = true;
        }
      }
      result.labeled.push_back(label);
    }
  }
  return result;
}

std::string_view to_string(ApMode mode) {
  return mode == ApMode::AllPoint ? "allpoint" : "11point";
}

std::optional<ApMode> parse_ap_mode(std::string_view name) {
  if (name == "allpoint") return ApMode::AllPoint;
  if (name == "11point") return ApMode::ElevenPoint;
  return std::nullopt;
}

std::vector<PrPoint> pr_curve(std::span<const LabeledDetection> ranked, std::int64_t gt_count) {
  std::vector<PrPoint> curve;
  curve.reserve(ranked.size());
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (const LabeledDetection& d : ranked) {
    (d.true_positive ? tp : fp) += 1;
    const double recall = gt_count > 0 ? static_cast<double>(tp) / static_cast<double>(gt_count) : 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    curve.push_back({recall, precision});
  }
  return curve;
}

double average_precision(std::span<const LabeledDetection> ranked, std::int64_t gt_count,
                         ApMode mode) {
  if (gt_count <= 0 || ranked.empty()) return 0.0;
  // Extended precision so the single final rounding lands on the correctly
  // rounded value (e.g. 5/6 for [TP, FP, TP] over 2 GT).
  using Real = long double;
  const std::size_t n = ranked.size();
  std::vector<Real> precision(n);
  std::vector<std::int64_t> tp_at(n);
  std::int64_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranked[i].true_positive) ++tp;
    tp_at[i] = tp;
    precision[i] = static_cast<Real>(tp) / static_cast<Real>(i + 1);
  }
  // Precision envelope: best precision at this rank or any later one.
  std::vector<Real> envelope(n);
  Real running = 0.0L;
  for (std::size_t i = n; i-- > 0;) {
    running = std::max(running, precision[i]);
    envelope[i] = running;
  }
  if (mode == ApMode::AllPoint) {
    // Recall rises by exactly 1/gt at each true positive.
    Real sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      if (ranked[i].true_positive) sum += envelope[i];
    }
    return static_cast<double>(sum / static_cast<Real>(gt_count));
  }
  Real sum = 0.0L;
  for (int k = 0; k <= 10; ++k) {
    // First rank with recall >= k/10, i.e. 10 * tp >= k * gt.
    for (std::size_t i = 0; i < n; ++i) {
      if (10 * tp_at[i] >= k * gt_count) {
        sum += envelope[i];
        break;
      }
    }
  }
  return static_cast<double>(sum / 11.0L);
}

EvalReport evaluate(std::span<const Detection> detections,
                    std::span<const GroundTruth> ground_truth,
                    std::span<const std::string> known_images, ApMode mode, double iou_threshold) {
  const std::set<std::string> images(known_images.begin(), known_images.end());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (!images.count(detections[i].image)) {
      throw ImageIdMismatch("detection " + std::to_string(i) + " refers to unknown image '" +
                            detections[i].image + "'");
    }
  }
  const MatchResult match = match_detections(detections, ground_truth, iou_threshold);

  EvalReport report;
  report.mode = mode;
  report.iou_threshold = iou_threshold;
  double ap_sum = 0.0;
  int counted = 0;
  for (ShapeClass shape : kShapeClasses) {
    ClassReport& cr = report.classes[static_cast<std::size_t>(class_code(shape))];
    cr.shape = shape;
    std::vector<LabeledDetection> ranked;
    for (const LabeledDetection& d : match.labeled) {
      if (d.shape == shape) ranked.push_back(d);
    }
    cr.gt = match.gt_counts[static_cast<std::size_t>(class_code(shape))];
    cr.tp = std::count_if(ranked.begin(), ranked.end(),
                          [](const LabeledDetection& d) { return d.true_positive; });
    cr.fp = static_cast<std::int64_t>(ranked.size()) - cr.tp;
    cr.pr = pr_curve(ranked, cr.gt);
    cr.skipped = cr.gt == 0 && ranked.empty();
    cr.ap = average_precision(ranked, cr.gt, mode);
    if (!cr.skipped) {
      ap_sum += cr.ap;
      ++counted;
    }
  }
  report.map = counted > 0 ? ap_sum / counted : 0.0;
  return report;
}

std::vector<Detection> parse_detections_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw EvalParseError(std::string("detections: malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("detections") || !root.at("detections").is_array()) {
    throw EvalParseError("detections: expected {\"detections\": [...]}");
  }
  std::vector<Detection> out;
  const json& list = root.at("detections");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "detections[" + std::to_string(i) + "]";
    const json& d = list[i];
    if (!d.is_object()) throw EvalParseError(where + ": expected an object");
    auto need = [&](const char* key) -> const json& {
      if (!d.contains(key)) throw EvalParseError(where + ": missing field '" + key + "'");
      return d.at(key);
    };
    Detection det;
    const json& image = need("image");
    if (!image.is_string()) throw EvalParseError(where + ".image: expected a string");
    det.image = image.get<std::string>();
    const json& cls = need("class");
    if (!cls.is_string()) throw EvalParseError(where + ".class: expected a string");
    const auto shape = parse_shape_class(cls.get<std::string>());
    if (!shape) throw UnknownClass(where + ".class: unknown class '" + cls.get<std::string>() + "'");
    det.shape = *shape;
    const json& box = need("bbox");
    if (!box.is_array() || box.size() != 4 ||
        !std::all_of(box.begin(), box.end(), [](const json& v) { return v.is_number(); })) {
      throw EvalParseError(where + ".bbox: expected 4 numbers");
    }
    det.bbox = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                box[3].get<double>()};
    if (!det.bbox.valid()) throw EvalParseError(where + ".bbox: needs x0 < x1 and y0 < y1");
    const json& score = need("score");
    if (!score.is_number() || !std::isfinite(score.get<double>())) {
      throw EvalParseError(where + ".score: expected a finite number");
    }
    det.score = score.get<double>();
    out.push_back(std::move(det));
  }
  return out;
}

std::string detections_json(std::span<const Detection> detections) {
  json list = json::array();
  for (const Detection& d : detections) {
    list.push_back({{"image", d.image},
                    {"class", std::string(to_string(d.shape))},
                    {"bbox", {d.bbox.xmin, d.bbox.ymin, d.bbox.xmax, d.bbox.ymax}},
                    {"score", d.score}});
  }
  return json{{"detections", list}}.dump(1) + "\n";
}

GroundTruthSet load_ground_truth(const fs::path& dataset_dir) {
  fs::path dir = dataset_dir / "annotations";
  if (!fs::is_directory(dir)) dir = dataset_dir;
  if (!fs::is_directory(dir)) throw IoError("ground truth directory not found: " + dataset_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  GroundTruthSet set;
  for (const fs::path& file : files) {
    AnnotationDoc doc;
    try {
      doc = parse_annotation_json(read_file(file));
    } catch (const EvalInputError& e) {
      throw EvalParseError(file.string() + ": " + e.what());
    }
    set.images.push_back(doc.image);
    for (const Annotation& a : doc.objects) set.boxes.push_back({doc.image, a.shape, a.bbox});
  }
  return set;
}

EvalReport evaluate_files(const fs::path& detections_file, const fs::path& dataset_dir, ApMode mode) {
  const std::vector<Detection> dets = parse_detections_json(read_file(detections_file));
  const GroundTruthSet gt = load_ground_truth(dataset_dir);
  return evaluate(dets, gt.boxes, gt.images, mode);
}

std::string report_json(const EvalReport& report) {
  json classes = json::object();
  for (const ClassReport& c : report.classes) {
    json pr = json::array();
    for (const PrPoint& p : c.pr) pr.push_back({p.recall, p.precision});
    classes[std::string(to_string(c.shape))] = {{"ap", c.ap},   {"skipped", c.skipped},
                                                {"gt", c.gt},   {"tp", c.tp},
                                                {"fp", c.fp},   {"pr", pr}};
  }
  json root = {{"ap_mode", std::string(to_string(report.mode))},
               {"iou_threshold", report.iou_threshold},
               {"map", report.map},
               {"classes", classes}};
  return root.dump(2) + "\n";
}

EvalReport parse_report_json(std::string_view text) {
  EvalReport report;
  try {
    const json root = json::parse(text);
    const auto mode = parse_ap_mode(root.at("ap_mode").get<std::string>());
    if (!mode) throw EvalParseError("report: unknown ap_mode");
    report.mode = *mode;
    report.iou_threshold = root.at("iou_threshold").get<double>();
    report.map = root.at("map").get<double>();
    for (ShapeClass shape : kShapeClasses) {
      const json& c = root.at("classes").at(std::string(to_string(shape)));
      ClassReport& cr = report.classes[static_cast<std::size_t>(class_code(shape))];
      cr.shape = shape;
      cr.ap = c.at("ap").get<double>();
      cr.skipped = c.at("skipped").get<bool>();
      cr.gt = c.at("gt").get<std::int64_t>();
      cr.tp = c.at("tp").get<std::int64_t>();
      cr.fp = c.at("fp").get<std::int64_t>();
      for (const json& p : c.at("pr")) cr.pr.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
  } catch (const EvalParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw EvalParseError(std::string("report: ") + e.what());
  }
  return report;
}

std::string pr_csv(const ClassReport& report) {
  std::string out = "recall,precision\n";
  for (const PrPoint& p : report.pr) out += real17(p.recall) + "," + real17(p.precision) + "\n";
  return out;
}

std::string pr_svg(const EvalReport& report) {
  constexpr double kW = 640, kH = 480, kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  // Box red, cylinder blue, sphere green.
  const char* colors[3] = {"#d62728", "#1f77b4", "#2ca02c"};
  std::ostringstream svg;
  char buf[256];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, pw, ph);
  svg << buf;
  for (int k = 0; k <= 10; k += 2) {
    const double f = k / 10.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"middle\">%.1f</text>\n",
                  kLeft + f * pw, kTop + ph + 16, f);
    svg << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">%.1f</text>\n",
                  kLeft - 6, kTop + (1.0 - f) * ph + 4, f);
    svg << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"13\" text-anchor=\"middle\">recall</text>\n",
                kLeft + pw / 2, kH - 12);
  svg << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%g\" font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %g)\">precision</text>\n",
                kTop + ph / 2, kTop + ph / 2);
  svg << buf;
  for (const ClassReport& c : report.classes) {
    const int idx = class_code(c.shape);
    if (!c.pr.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << colors[idx] << "\" stroke-width=\"1.5\" points=\"";
      for (const PrPoint& p : c.pr) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", kLeft + p.recall * pw,
                      kTop + (1.0 - p.precision) * ph);
        svg << buf;
      }
      svg << "\"/>\n";
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"12\" fill=\"%s\">%s AP %.4f%s</text>\n",
                  kLeft + pw - 150, kTop + 18 + 16.0 * idx, colors[idx],
                  std::string(to_string(c.shape)).c_str(), c.ap, c.skipped ? " (skipped)" : "");
    svg << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"20\" font-size=\"13\">mAP %.4f (%s, IoU %.2f)</text>\n", kLeft,
                report.map, std::string(to_string(report.mode)).c_str(), report.iou_threshold);
  svg << buf;
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace randr
