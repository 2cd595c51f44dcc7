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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "spinebox/geometry.hpp"

namespace spinebox {

// Channels in [0, 255]; real-valued because cluster means are fractional.
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend Rgb operator+(Rgb a, Rgb b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }
  friend Rgb operator-(Rgb a, Rgb b) { return {a.r - b.r, a.g - b.g, a.b - b.b}; }
  friend Rgb operator*(Rgb a, double s) { return {a.r * s, a.g * s, a.b * s}; }
  friend bool operator==(Rgb a, Rgb b) = default;
  friend auto operator<=>(Rgb a, Rgb b) = default;
};

// Euclidean distance in RGB.
double color_distance(Rgb a, Rgb b);

// Row-major interleaved RGB raster with float channels. Pixel (x, y) covers
// the unit square [x, x+1) x [y, y+1); its center is (x + 0.5, y + 0.5).
class ImageBuffer {
 public:
  // Throws Error(kInvalidArgument) unless width, height >= 1.
  ImageBuffer(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const {
    const float* p = &data_[index(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    float* p = &data_[index(x, y)];
    p[0] = static_cast<float>(c.r);
    p[1] = static_cast<float>(c.g);
    p[2] = static_cast<float>(c.b);
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y) const {
    return 3 * (static_cast<std::size_t>(y) * width_ + x);
  }

  int width_;
  int height_;
  std::vector<float> data_;
};

// Calls fn(x, y) for every pixel of a width x height raster whose center lies
// inside the box (boundary inclusive). Rows ascending, then columns.
template <typename Fn>
void for_each_pixel_in(const OrientedBox& box, int width, int height, Fn&& fn) {
  constexpr double kTol = 1e-9;
  const Point c = box.center();
  const Point v = box.width_axis();
  const Point u = box.height_axis();
  const double half_w = 0.5 * box.width() + kTol;
  const double half_h = 0.5 * box.height() + kTol;

  double min_y = c.y, max_y = c.y;
  for (const Point& p : corner_points(box)) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int row_begin = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
  const int row_end = std::min(height - 1, static_cast<int>(std::ceil(max_y - 0.5)));

  // Along a row both local coordinates are affine in x; intersect the two
  // slabs to get the covered span of pixel centers.
  auto slab = [](double k, double offset, double half, double& lo, double& hi) {
    if (std::abs(k) < 1e-12) {
      if (std::abs(offset) > half) hi = lo - 1.0;
      return;
    }
    double a = (-half - offset) / k;
    double b = (half - offset) / k;
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  };

  for (int y = row_begin; y <= row_end; ++y) {
    const double dy = (y + 0.5) - c.y;
    double lo = -1e300, hi = 1e300;
    slab(v.x, dy * v.y, half_w, lo, hi);
    slab(u.x, dy * u.y, half_h, lo, hi);
    if (lo > hi) continue;
    const int x_begin = std::max(0, static_cast<int>(std::ceil(c.x + lo - 0.5)));
    const int x_end =
        std::min(width - 1, static_cast<int>(std::floor(c.x + hi - 0.5)));
    for (int x = x_begin; x <= x_end; ++x) fn(x, y);
  }
}

// Rotates the raster a quarter turn counter-clockwise on screen. A point
// (x, y) of the source lands at (y, W - x) in the result, W = source width.
ImageBuffer rotate_quarter_turn(const ImageBuffer& img);

// Box mapping that matches rotate_quarter_turn() on an image of the given
// source width, and its inverse.
OrientedBox quarter_turn(const OrientedBox& box, int source_width);
OrientedBox undo_quarter_turn(const OrientedBox& box, int source_width);

}  // namespace spinebox
