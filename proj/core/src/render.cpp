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

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "spinebox/io.hpp"

namespace spinebox {

std::vector<std::pair<int, int>> line_pixels(Point a, Point b) {
  int x0 = static_cast<int>(std::floor(a.x)), y0 = static_cast<int>(std::floor(a.y));
  const int x1 = static_cast<int>(std::floor(b.x)), y1 = static_cast<int>(std::floor(b.y));
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  while (true) {
    out.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return out;
}

namespace {

void stroke_box(ImageBuffer& img, const OrientedBox& box, Rgb color, int dash) {
  const auto pts = corner_points(box);
  int step = 0;
  for (int i = 0; i < 4; ++i) {
    for (const auto& [x, y] : line_pixels(pts[i], pts[(i + 1) % 4])) {
      const bool on = dash == 0 || (step++ / dash) % 2 == 0;
      if (on && x >= 0 && y >= 0 && x < img.width() && y < img.height()) {
        img.set(x, y, color);
      }
    }
  }
}

}  // namespace

ImageBuffer annotate(const ImageBuffer& img, std::span<const OrientedBox> boxes,
                     std::span<const OrientedBox> truth) {
  ImageBuffer out = img;
  for (const auto& g : truth) stroke_box(out, g, kTruthStroke, kTruthDash);
  for (const auto& b : boxes) stroke_box(out, b, kPredictionStroke, 0);
  return out;
}

void render_annotated(const ImageBuffer& img, std::span<const OrientedBox> boxes,
                      std::span<const OrientedBox> truth,
                      const std::filesystem::path& path) {
  save_png(annotate(img, boxes, truth), path);
}

}  // namespace spinebox
