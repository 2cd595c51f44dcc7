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

#include <cstddef>
#include <span>
#include <vector>

#include "spinebox/color.hpp"
#include "spinebox/geometry.hpp"
#include "spinebox/image.hpp"

namespace spinebox {

// Tunables of the refinement pipeline. Defaults are the published settings,
// except nms_iou which the method leaves open.
struct RefineConfig {
  int adjust_range_px = 5;
  int adjust_range_deg = 10;
  double threshold_text = 100.0;
  double threshold_spine = 60.0;
  double wide_range_rate = 2.0;
  double shrink_x = 0.85;
  double shrink_y = 0.6;
  double nms_iou = 0.3;
  double min_edge_px = 100.0;
  bool enable_adjust_location = true;
  bool enable_adjust_angle = true;

  // Throws ConfigError naming the first offending field.
  void validate() const;

  friend bool operator==(const RefineConfig&, const RefineConfig&) = default;
};

// Fixed-point grouping stops after this many rounds even if not converged.
inline constexpr int kMaxGroupingRounds = 10;
// Inputs whose median angle is this close to horizontal are processed on a
// quarter-turned image.
inline constexpr double kHorizontalToleranceDeg = 15.0;

// Canonical spatial order: center y ascending, then center x ascending.
bool spatial_less(const OrientedBox& a, const OrientedBox& b);

struct Detection {
  OrientedBox box;
  BoxColors colors;
};

// Boxes with their colors, always kept in spatial order.
class DetectionSet {
 public:
  DetectionSet() = default;
  explicit DetectionSet(std::vector<Detection> items);

  // Extracts colors for every box. Boxes that cover no pixel are skipped and
  // counted in *skipped when it is non-null.
  static DetectionSet from_image(const ImageBuffer& img,
                                 std::span<const OrientedBox> boxes,
                                 std::size_t* skipped = nullptr);

  const std::vector<Detection>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Detection& operator[](std::size_t i) const { return items_[i]; }
  std::vector<OrientedBox> boxes() const;

 private:
  std::vector<Detection> items_;
};

// members[0] founded the group; indices refer to the DetectionSet that was
// grouped and are ascending.
struct BoxGroup {
  std::vector<OrientedBox> members;
  std::vector<std::size_t> indices;
  BoxColors colors;
};

enum class ShiftMode { kLocation, kAngle };

struct ShiftedBox {
  OrientedBox pose;     // what gets stored
  OrientedBox scoring;  // shrunken copy whose mean color is scored
};

// Location moves the box along its width axis (across the spine) by `offset`
// pixels; angle rotates it about its center by `offset` degrees.
ShiftedBox shift(const OrientedBox& box, ShiftMode mode, double offset,
                 const RefineConfig& cfg);

// Distance of the mean color to the spine color minus its distance to the
// text color. -infinity when the box covers no pixel.
double adjust_score(const ImageBuffer& img, const OrientedBox& scoring_box,
                    const BoxColors& colors);

struct AdjustChoice {
  int offset = 0;
  double score = 0.0;
  double score_at_zero = 0.0;
  OrientedBox pose;
};

// Scans every integer offset in [-range, range] in the order
// 0, -1, +1, -2, +2, ... and keeps the first best score.
AdjustChoice adjust_box(const ImageBuffer& img, const Detection& det,
                        ShiftMode mode, const RefineConfig& cfg);

DetectionSet adjust(const ImageBuffer& img, const DetectionSet& ds,
                    ShiftMode mode, const RefineConfig& cfg);

// Greedy partition: the topmost ungrouped box founds a group, its book range
// is widened by cfg.wide_range_rate, and every ungrouped box that is more
// than half inside that range and matches the founder's colors joins.
std::vector<BoxGroup> grouping(const DetectionSet& ds, double image_height,
                               const RefineConfig& cfg);

// Minimum-area box around the group, carrying the founder's colors.
// Throws Error(kEmptyGroup).
Detection merge_group(const BoxGroup& group);

// Greedy suppression by descending area; a box is dropped when its IoU with
// an already kept box exceeds iou_threshold. Kept boxes come back in ranking
// order.
std::vector<OrientedBox> nms(std::span<const OrientedBox> boxes,
                             double iou_threshold);

// Drops boxes none of whose edges exceeds min_edge.
std::vector<OrientedBox> filter_small(std::span<const OrientedBox> boxes,
                                      double min_edge);

struct RefineResult {
  std::vector<OrientedBox> boxes;  // spatial order
  int grouping_rounds = 0;
  bool quarter_turned = false;
  std::size_t skipped_boxes = 0;
};

RefineResult refine_pipeline_detailed(const ImageBuffer& img,
                                      std::span<const OrientedBox> raw_boxes,
                                      const RefineConfig& cfg);

std::vector<OrientedBox> refine_pipeline(const ImageBuffer& img,
                                         std::span<const OrientedBox> raw_boxes,
                                         const RefineConfig& cfg);

// Baseline without adjusting or grouping: NMS then the size filter.
std::vector<OrientedBox> naive_pipeline(std::span<const OrientedBox> raw_boxes,
                                        const RefineConfig& cfg);

}  // namespace spinebox
