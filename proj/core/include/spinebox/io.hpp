// Copyright 2026 The Spinebox Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinebox/geometry.hpp"
#include "spinebox/image.hpp"
#include "spinebox/metrics.hpp"
#include "spinebox/refine.hpp"

namespace spinebox {

// Decodes PNG or JPEG (sniffed from the file header) into RGB.
// Throws Error(kIoError) when the file cannot be read, Error(kDecodeError)
// when its contents are not a decodable image.
ImageBuffer load_image(const std::filesystem::path& path);

// Writes 8-bit RGB PNG; channels are rounded and clamped to [0, 255].
void save_png(const ImageBuffer& img, const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Box list as read from a detector dump or a ground-truth file.
//
// Text grammar, one box per line (commas, or whitespace when a line has no
// commas): `x1,y1,x2,y2,x3,y3,x4,y4` or `cx,cy,w,h,angle`, optionally followed
// by one non-numeric label field. Blank lines and `#` comments are skipped.
// The `.json` variant is {"image": "...", "boxes": [[...], ...],
// "labels": [...]} with the same 5- or 8-number rows.
struct BoxFile {
  std::filesystem::path source;
  std::string image;                // image stem or the JSON "image" field
  std::vector<OrientedBox> boxes;
  std::vector<std::string> labels;  // parallel to boxes, empty when absent
  double max_fit_deviation = 0.0;   // worst quad-to-rectangle corner error
  std::vector<std::string> warnings;
};
using DetectionFile = BoxFile;
using GroundTruthFile = BoxFile;

// Quads whose rectangle fit deviates more than this many pixels are flagged.
inline constexpr double kQuadFitWarnPx = 2.0;

// Throws Error(kIoError) or ParseError (with the 1-based line).
BoxFile load_boxes(const std::filesystem::path& path);
inline DetectionFile load_detections(const std::filesystem::path& path) {
  return load_boxes(path);
}
GroundTruth load_ground_truth(const std::filesystem::path& path);

// Minimum-area rectangle around a quad. The edge q0->q1 is taken as the
// width direction, q1->q2 as the height direction. *deviation receives the
// largest distance from a quad vertex to the nearest rectangle corner.
OrientedBox fit_quad(std::span<const Point, 4> quad, double* deviation = nullptr);

// `cx,cy,w,h,angle` per line, shortest round-trip number formatting.
std::string format_boxes(std::span<const OrientedBox> boxes);
void write_boxes(const std::filesystem::path& path, std::span<const OrientedBox> boxes);

// Names of the RefineConfig JSON keys, in declaration order.
std::span<const std::string_view> config_field_names();

// Overlays the keys present in `json_text` onto `base`. Unknown keys and
// values of the wrong type or range throw ConfigError naming the key.
RefineConfig apply_config_json(RefineConfig base, std::string_view json_text);
RefineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RefineConfig& cfg);

struct ReportRow {
  std::string name;
  MetricsReport metrics;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// A metrics table: one row per image (or per configuration) and an optional
// TOTAL row. `key` names the first column.
struct Report {
  std::string key = "image";
  std::vector<ReportRow> rows;
  std::optional<MetricsReport> total;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { kJson, kCsv };

// CSV columns, in order, after the key column.
inline constexpr std::string_view kCsvColumns =
    "BA,EDBC,IoU,ADM,matched_books,total_books,false_boxes";

std::string format_report(const Report& report, ReportFormat format);
Report parse_report(std::string_view text, ReportFormat format);
void write_report(const Report& report, const std::filesystem::path& path,
                  ReportFormat format);
Report read_report(const std::filesystem::path& path, ReportFormat format);

inline constexpr Rgb kPredictionStroke{255.0, 0.0, 0.0};
inline constexpr Rgb kTruthStroke{0.0, 255.0, 0.0};
// Truth outlines are dashed: this many pixels on, this many off.
inline constexpr int kTruthDash = 4;

// Pixels of the segment between the pixels containing a and b (Bresenham).
std::vector<std::pair<int, int>> line_pixels(Point a, Point b);

// Draws truth outlines (dashed) and then predictions (solid) on a copy.
ImageBuffer annotate(const ImageBuffer& img, std::span<const OrientedBox> boxes,
                     std::span<const OrientedBox> truth = {});
void render_annotated(const ImageBuffer& img, std::span<const OrientedBox> boxes,
                      std::span<const OrientedBox> truth,
                      const std::filesystem::path& path);

}  // namespace spinebox
