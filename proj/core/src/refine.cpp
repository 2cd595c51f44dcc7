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

#include "spinebox/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spinebox/error.hpp"

namespace spinebox {

void RefineConfig::validate() const {
  auto positive = [](const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(field, "must be a positive number");
    }
  };
  auto unit_ratio = [](const char* field, double v) {
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError(field, "must be in (0, 1]");
  };
  if (adjust_range_px < 0) throw ConfigError("adjust_range_px", "must be >= 0");
  if (adjust_range_deg < 0) throw ConfigError("adjust_range_deg", "must be >= 0");
  positive("threshold_text", threshold_text);
  positive("threshold_spine", threshold_spine);
  positive("wide_range_rate", wide_range_rate);
  unit_ratio("shrink_x", shrink_x);
  unit_ratio("shrink_y", shrink_y);
  if (!(nms_iou > 0.0 && nms_iou < 1.0)) {
    throw ConfigError("nms_iou", "must be in (0, 1)");
  }
  if (!(min_edge_px >= 0.0) || !std::isfinite(min_edge_px)) {
    throw ConfigError("min_edge_px", "must be a non-negative number");
  }
}

bool spatial_less(const OrientedBox& a, const OrientedBox& b) {
  if (a.cy() != b.cy()) return a.cy() < b.cy();
  return a.cx() < b.cx();
}

DetectionSet::DetectionSet(std::vector<Detection> items) : items_(std::move(items)) {
  std::stable_sort(items_.begin(), items_.end(),
                   [](const Detection& a, const Detection& b) {
                     return spatial_less(a.box, b.box);
                   });
}

DetectionSet DetectionSet::from_image(const ImageBuffer& img,
                                      std::span<const OrientedBox> boxes,
                                      std::size_t* skipped) {
  std::vector<Detection> items;
  items.reserve(boxes.size());
  std::size_t dropped = 0;
  for (const auto& box : boxes) {
    try {
      items.push_back({box, extract_box_colors(img, box)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyPatch) throw;
      ++dropped;
    }
  }
  if (skipped != nullptr) *skipped = dropped;
  return DetectionSet(std::move(items));
}

std::vector<OrientedBox> DetectionSet::boxes() const {
  std::vector<OrientedBox> out;
  out.reserve(items_.size());
  for (const auto& d : items_) out.push_back(d.box);
  return out;
}

ShiftedBox shift(const OrientedBox& box, ShiftMode mode, double offset,
                 const RefineConfig& cfg) {
  OrientedBox pose = box;
  if (offset != 0.0) {
    if (mode == ShiftMode::kLocation) {
      const Point step = box.width_axis() * offset;
      pose = box.translated(step.x, step.y);
    } else {
      pose = box.rotated(offset);
    }
  }
  return {pose, pose.resized(pose.width() * cfg.shrink_x,
                             pose.height() * cfg.shrink_y)};
}

double adjust_score(const ImageBuffer& img, const OrientedBox& scoring_box,
                    const BoxColors& colors) {
  Rgb avg;
  try {
    avg = mean_color(img, scoring_box);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyPatch) throw;
    return -std::numeric_limits<double>::infinity();
  }
  return color_distance(avg, colors.spine) - color_distance(avg, colors.text);
}

AdjustChoice adjust_box(const ImageBuffer& img, const Detection& det,
                        ShiftMode mode, const RefineConfig& cfg) {
  const int range =
      mode == ShiftMode::kLocation ? cfg.adjust_range_px : cfg.adjust_range_deg;
  AdjustChoice best{0, -std::numeric_limits<double>::infinity(), 0.0, det.box};
  for (int k = 0; k <= 2 * range; ++k) {
    // 0, -1, +1, -2, +2, ...
    const int offset = (k % 2 == 1) ? -(k + 1) / 2 : k / 2;
    const ShiftedBox s = shift(det.box, mode, offset, cfg);
    const double score = adjust_score(img, s.scoring, det.colors);
    if (k == 0) best.score_at_zero = score;
    if (score > best.score) {
      best.score = score;
      best.offset = offset;
      best.pose = s.pose;
    }
  }
  return best;
}

DetectionSet adjust(const ImageBuffer& img, const DetectionSet& ds,
                    ShiftMode mode, const RefineConfig& cfg) {
  std::vector<Detection> out;
  out.reserve(ds.size());
  for (const auto& det : ds.items()) {
    out.push_back({adjust_box(img, det, mode, cfg).pose, det.colors});
  }
  return DetectionSet(std::move(out));
}

std::vector<BoxGroup> grouping(const DetectionSet& ds, double image_height,
                               const RefineConfig& cfg) {
  std::vector<BoxGroup> groups;
  std::vector<std::size_t> remaining(ds.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});

  while (!remaining.empty()) {
    const Detection& founder = ds[remaining.front()];
    BoxGroup group;
    group.colors = founder.colors;
    group.members.push_back(founder.box);
    group.indices.push_back(remaining.front());

    std::vector<std::size_t> rest;
    bool has_range = true;
    BookRange range;
    try {
      range = book_range(founder.box, image_height).widened(cfg.wide_range_rate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateAngle) throw;
      has_range = false;
    }

    const OrientedBox range_box = has_range ? range.as_box() : founder.box;
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      const Detection& cand = ds[remaining[k]];
      bool joins = false;
      if (has_range) {
        const double norm_spine = color_distance(founder.colors.spine, cand.colors.spine);
        const double norm_text = color_distance(founder.colors.text, cand.colors.text);
        const bool color_ok =
            norm_text < cfg.threshold_text && norm_spine < cfg.threshold_spine;
        joins = color_ok && contained_fraction(cand.box, range_box) > 0.5;
      }
      if (joins) {
        group.members.push_back(cand.box);
        group.indices.push_back(remaining[k]);
      } else {
        rest.push_back(remaining[k]);
      }
    }
    groups.push_back(std::move(group));
    remaining = std::move(rest);
  }
  return groups;
}

Detection merge_group(const BoxGroup& group) {
  if (group.members.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "cannot merge an empty group");
  }
  if (group.members.size() == 1) return {group.members.front(), group.colors};
  return {enclosing_box(group.members), group.colors};
}

std::vector<OrientedBox> nms(std::span<const OrientedBox> boxes,
                             double iou_threshold) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double aa = boxes[a].area(), ab = boxes[b].area();
    if (aa != ab) return aa > ab;
    return spatial_less(boxes[a], boxes[b]);
  });

  std::vector<OrientedBox> kept;
  for (std::size_t i : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return iou(boxes[i], k) > iou_threshold;
    });
    if (!suppressed) kept.push_back(boxes[i]);
  }
  return kept;
}

std::vector<OrientedBox> filter_small(std::span<const OrientedBox> boxes,
                                      double min_edge) {
  std::vector<OrientedBox> out;
  for (const auto& b : boxes) {
    if (std::max(b.width(), b.height()) > min_edge) out.push_back(b);
  }
  return out;
}

namespace {

bool mostly_horizontal(std::span<const OrientedBox> boxes) {
  std::vector<double> tilt;
  tilt.reserve(boxes.size());
  for (const auto& b : boxes) tilt.push_back(std::min(b.angle(), 180.0 - b.angle()));
  const auto mid = tilt.begin() + static_cast<std::ptrdiff_t>(tilt.size() / 2);
  std::nth_element(tilt.begin(), mid, tilt.end());
  return *mid < kHorizontalToleranceDeg;
}

}  // namespace

RefineResult refine_pipeline_detailed(const ImageBuffer& img,
                                      std::span<const OrientedBox> raw_boxes,
                                      const RefineConfig& cfg) {
  cfg.validate();
  RefineResult result;
  if (raw_boxes.empty()) return result;

  result.quarter_turned = mostly_horizontal(raw_boxes);
  std::vector<OrientedBox> work(raw_boxes.begin(), raw_boxes.end());
  ImageBuffer filtered = [&] {
    if (!result.quarter_turned) return gaussian_filter(img);
    for (auto& b : work) b = quarter_turn(b, img.width());
    return gaussian_filter(rotate_quarter_turn(img));
  }();

  DetectionSet ds = DetectionSet::from_image(filtered, work, &result.skipped_boxes);
  if (cfg.enable_adjust_location) ds = adjust(filtered, ds, ShiftMode::kLocation, cfg);
  if (cfg.enable_adjust_angle) ds = adjust(filtered, ds, ShiftMode::kAngle, cfg);

  const double image_height = filtered.height();
  for (int round = 1; round <= kMaxGroupingRounds && !ds.empty(); ++round) {
    const auto groups = grouping(ds, image_height, cfg);
    result.grouping_rounds = round;
    if (groups.size() == ds.size()) break;
    std::vector<Detection> merged;
    merged.reserve(groups.size());
    for (const auto& g : groups) merged.push_back(merge_group(g));
    ds = DetectionSet(std::move(merged));
  }

  const auto boxes = ds.boxes();
  auto kept = filter_small(nms(boxes, cfg.nms_iou), cfg.min_edge_px);
  if (result.quarter_turned) {
    for (auto& b : kept) b = undo_quarter_turn(b, img.width());
  }
  std::stable_sort(kept.begin(), kept.end(), spatial_less);
  result.boxes = std::move(kept);
  return result;
}

std::vector<OrientedBox> refine_pipeline(const ImageBuffer& img,
                                         std::span<const OrientedBox> raw_boxes,
                                         const RefineConfig& cfg) {
  return refine_pipeline_detailed(img, raw_boxes, cfg).boxes;
}

std::vector<OrientedBox> naive_pipeline(std::span<const OrientedBox> raw_boxes,
                                        const RefineConfig& cfg) {
  cfg.validate();
  auto kept = filter_small(nms(raw_boxes, cfg.nms_iou), cfg.min_edge_px);
  std::stable_sort(kept.begin(), kept.end(), spatial_less);
  return kept;
}

}  // namespace spinebox
