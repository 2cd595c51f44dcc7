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

// Seeded scenes and the pipeline invariant checks shared by the unit tests
// and the acceptance runner.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spinebox/color.hpp"
#include "spinebox/error.hpp"
#include "spinebox/refine.hpp"
#include "spinebox/synth.hpp"
#include "support.hpp"

namespace testing {

struct Scene {
  spinebox::ImageBuffer image{1, 1};
  std::vector<spinebox::OrientedBox> raw;
};

// A small shelf with noisy fragments plus a few stray boxes. Every seed
// gives a valid scene.
inline Scene random_scene(std::uint64_t seed) {
  oracle::Gen g(seed);
  spinebox::ShelfSpec spec;
  spec.seed = seed;
  spec.canvas_width = 640;
  spec.canvas_height = 720;
  spec.book_count = {1, g.integer(1, 4)};
  const double tilt = g.uniform() < 0.3 ? 25.0 : 8.0;
  spec.spine_angle_deg = {90.0 - tilt, 90.0 + tilt};
  spec.spine_width_px = {40.0, 90.0};
  spec.spine_height_px = {250.0, 560.0};
  spec.fragments = {1, g.integer(1, 4)};
  spec.center_jitter_px = g.uniform(0.0, 4.0);
  spec.angle_jitter_deg = g.uniform(0.0, 3.0);
  spec.horizontal = g.uniform() < 0.15;
  spinebox::SyntheticShelf shelf{};
  for (;;) {
    try {
      shelf = spinebox::generate(spec);
      break;
    } catch (const spinebox::Error&) {
      spec.book_count.hi = std::max(1, spec.book_count.hi - 1);
      spec.spine_width_px.hi = std::max(spec.spine_width_px.lo, spec.spine_width_px.hi - 10);
    }
  }
  Scene s{shelf.image, shelf.raw_boxes};
  const int strays = g.integer(0, 3);
  for (int i = 0; i < strays; ++i) {
    s.raw.emplace_back(g.uniform(0, s.image.width()), g.uniform(0, s.image.height()),
                       g.uniform(5, 150), g.uniform(5, 150), g.uniform(1, 180));
  }
  return s;
}

// Returns an empty string when every invariant holds, else a description
// of the first violation.
inline std::string pipeline_invariant_violation(const Scene& scene,
                                                const spinebox::RefineConfig& cfg) {
  using namespace spinebox;
  std::ostringstream why;
  const ImageBuffer filtered = gaussian_filter(scene.image);
  const DetectionSet ds = DetectionSet::from_image(filtered, scene.raw);

  // Adjusting stays in range and never loses score.
  for (const auto& det : ds.items()) {
    for (ShiftMode mode : {ShiftMode::kLocation, ShiftMode::kAngle}) {
      const AdjustChoice c = adjust_box(filtered, det, mode, cfg);
      const int range = mode == ShiftMode::kLocation ? cfg.adjust_range_px : cfg.adjust_range_deg;
      if (std::abs(c.offset) > range) return "adjust offset out of range";
      if (c.score < c.score_at_zero) return "adjust lowered the score";
      const double moved = std::hypot(c.pose.cx() - det.box.cx(), c.pose.cy() - det.box.cy());
      const double turned = angle_gap(c.pose.angle(), det.box.angle());
      if (mode == ShiftMode::kLocation && (moved > cfg.adjust_range_px + 1e-9 || turned > 1e-9)) {
        return "location adjust moved too far";
      }
      if (mode == ShiftMode::kAngle && (moved > 1e-9 || turned > cfg.adjust_range_deg + 1e-9)) {
        return "angle adjust moved too far";
      }
    }
  }

  // Grouping partitions the set, deterministically.
  const auto groups = grouping(ds, filtered.height(), cfg);
  std::vector<int> seen(ds.size(), 0);
  for (const auto& g : groups) {
    if (g.members.empty() || g.members.size() != g.indices.size()) return "malformed group";
    if (!std::is_sorted(g.indices.begin(), g.indices.end())) return "group indices unsorted";
    for (std::size_t k = 0; k < g.indices.size(); ++k) {
      if (g.indices[k] >= ds.size()) return "group index out of range";
      ++seen[g.indices[k]];
      if (!(g.members[k] == ds[g.indices[k]].box)) return "group member mismatch";
    }
    if (!(g.colors == ds[g.indices[0]].colors)) return "group colors are not the founder's";
  }
  for (int n : seen) {
    if (n != 1) return "grouping is not a partition";
  }
  if (groups.size() > ds.size()) return "more groups than boxes";
  const auto again = grouping(ds, filtered.height(), cfg);
  if (again.size() != groups.size()) return "grouping not deterministic";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (again[i].indices != groups[i].indices) return "grouping not deterministic";
  }

  // NMS and the size filter are idempotent.
  const auto once = nms(scene.raw, cfg.nms_iou);
  if (nms(once, cfg.nms_iou) != once) return "nms not idempotent";
  const auto small = filter_small(scene.raw, cfg.min_edge_px);
  if (filter_small(small, cfg.min_edge_px) != small) return "filter_small not idempotent";

  // The fixed-point loop exits on its own, within box-count rounds.
  const RefineResult r = refine_pipeline_detailed(scene.image, scene.raw, cfg);
  const std::size_t usable = scene.raw.size() - r.skipped_boxes;
  if (usable > 0 && (r.grouping_rounds < 1 ||
                     static_cast<std::size_t>(r.grouping_rounds) > usable)) {
    why << "grouping ran " << r.grouping_rounds << " rounds for " << usable << " boxes";
    return why.str();
  }
  if (r.grouping_rounds >= kMaxGroupingRounds) return "grouping hit the round cap";

  for (std::size_t i = 0; i < r.boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < r.boxes.size(); ++j) {
      const double v = iou(r.boxes[i], r.boxes[j]);
      if (v > cfg.nms_iou + 1e-9) {
        why << "output boxes " << i << " and " << j << " overlap with IoU " << v;
        return why.str();
      }
    }
  }
  return {};
}

}  // namespace testing
