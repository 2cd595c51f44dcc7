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

#include "spinebox/color.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinebox/error.hpp"

namespace spinebox {

namespace {

constexpr int kMaxIterations = 20;
constexpr double kConvergence = 0.5;
constexpr double kCornerInset = 2.0;
// Above this many distinct colors the farthest pair is searched among the
// extreme points along a fixed set of directions instead of all pairs.
constexpr std::size_t kBruteForcePairLimit = 2048;
constexpr int kExtremeDirections = 128;

double squared_distance(Rgb a, Rgb b) {
  const Rgb d = a - b;
  return d.r * d.r + d.g * d.g + d.b * d.b;
}

struct WeightedColor {
  Rgb color;
  double count;
};

std::vector<WeightedColor> distinct_colors(std::span<const Rgb> colors) {
  std::vector<Rgb> sorted(colors.begin(), colors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<WeightedColor> out;
  for (const Rgb& c : sorted) {
    if (!out.empty() && out.back().color == c) {
      out.back().count += 1.0;
    } else {
      out.push_back({c, 1.0});
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> farthest_pair_among(
    const std::vector<WeightedColor>& pts, const std::vector<std::size_t>& idx) {
  std::pair<std::size_t, std::size_t> best{idx[0], idx[0]};
  double best_d = -1.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const double d = squared_distance(pts[idx[i]].color, pts[idx[j]].color);
      if (d > best_d) {
        best_d = d;
        best = {idx[i], idx[j]};
      }
    }
  }
  if (best.first > best.second) std::swap(best.first, best.second);
  return best;
}

// Indices of the two most distant colors; the smaller index first.
std::pair<std::size_t, std::size_t> farthest_pair(
    const std::vector<WeightedColor>& pts) {
  std::vector<std::size_t> idx;
  if (pts.size() <= kBruteForcePairLimit) {
    idx.resize(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return farthest_pair_among(pts, idx);
  }
  // Both ends of a diameter are hull vertices, and hull vertices are extreme
  // along some direction. Collect extremes over a Fibonacci sphere.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < kExtremeDirections; ++k) {
    const double z = 1.0 - (k + 0.5) * 2.0 / kExtremeDirections;
    const double r = std::sqrt(1.0 - z * z);
    const Rgb dir{r * std::cos(golden * k), r * std::sin(golden * k), z};
    std::size_t lo = 0, hi = 0;
    double lo_v = std::numeric_limits<double>::infinity(), hi_v = -lo_v;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Rgb& c = pts[i].color;
      const double v = c.r * dir.r + c.g * dir.g + c.b * dir.b;
      if (v < lo_v) lo_v = v, lo = i;
      if (v > hi_v) hi_v = v, hi = i;
    }
    idx.push_back(lo);
    idx.push_back(hi);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return farthest_pair_among(pts, idx);
}

int nearest(const std::array<Rgb, 2>& means, Rgb c) {
  return squared_distance(c, means[1]) < squared_distance(c, means[0]) ? 1 : 0;
}

}  // namespace

std::array<double, kGaussianSize> gaussian_kernel() {
  std::array<double, kGaussianSize> k{};
  double sum = 0.0;
  for (int i = 0; i < kGaussianSize; ++i) {
    const double d = i - kGaussianSize / 2;
    k[i] = std::exp(-d * d / (2.0 * kGaussianSigma * kGaussianSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

ImageBuffer gaussian_filter(const ImageBuffer& img) {
  const auto k = gaussian_kernel();
  constexpr int kHalf = kGaussianSize / 2;
  const int w = img.width();
  const int h = img.height();
  const auto src = img.data();

  // Horizontal pass into a double buffer, then vertical pass.
  std::vector<double> tmp(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int t = -kHalf; t <= kHalf; ++t) {
        const int xx = std::clamp(x + t, 0, w - 1);
        const std::size_t s = 3 * (static_cast<std::size_t>(y) * w + xx);
        for (int ch = 0; ch < 3; ++ch) acc[ch] += k[t + kHalf] * src[s + ch];
      }
      const std::size_t d = 3 * (static_cast<std::size_t>(y) * w + x);
      for (int ch = 0; ch < 3; ++ch) tmp[d + ch] = acc[ch];
    }
  }

  ImageBuffer out(w, h);
  auto dst = out.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int t = -kHalf; t <= kHalf; ++t) {
        const int yy = std::clamp(y + t, 0, h - 1);
        const std::size_t s = 3 * (static_cast<std::size_t>(yy) * w + x);
        for (int ch = 0; ch < 3; ++ch) acc[ch] += k[t + kHalf] * tmp[s + ch];
      }
      const std::size_t d = 3 * (static_cast<std::size_t>(y) * w + x);
      for (int ch = 0; ch < 3; ++ch) dst[d + ch] = static_cast<float>(acc[ch]);
    }
  }
  return out;
}

std::vector<Rgb> sample_patch(const ImageBuffer& img, const OrientedBox& box) {
  std::vector<Rgb> out;
  for_each_pixel_in(box, img.width(), img.height(),
                    [&](int x, int y) { out.push_back(img.at(x, y)); });
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyPatch, "box covers no pixel centers");
  }
  return out;
}

Rgb mean_color(const ImageBuffer& img, const OrientedBox& box) {
  Rgb sum;
  std::size_t n = 0;
  for_each_pixel_in(box, img.width(), img.height(), [&](int x, int y) {
    sum = sum + img.at(x, y);
    ++n;
  });
  if (n == 0) {
    throw Error(ErrorCode::kEmptyPatch, "box covers no pixel centers");
  }
  return sum * (1.0 / static_cast<double>(n));
}

ColorClusters two_means(std::span<const Rgb> colors) {
  ColorClusters out;
  if (colors.empty()) {
    throw Error(ErrorCode::kEmptyPatch, "no colors to cluster");
  }
  const auto pts = distinct_colors(colors);
  if (pts.size() == 1) {
    out.mean = {pts[0].color, pts[0].color};
    out.weight = {pts[0].count, 0.0};
    out.single_color = true;
    return out;
  }

  const auto [i, j] = farthest_pair(pts);
  out.mean = {pts[i].color, pts[j].color};
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::array<Rgb, 2> sum{};
    std::array<double, 2> weight{0.0, 0.0};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const int c = nearest(out.mean, pts[p].color);
      sum[c] = sum[c] + pts[p].color * pts[p].count;
      weight[c] += pts[p].count;
    }
    double shift = 0.0;
    for (int c = 0; c < 2; ++c) {
      if (weight[c] == 0.0) continue;
      const Rgb next = sum[c] * (1.0 / weight[c]);
      const Rgb d = next - out.mean[c];
      shift = std::max({shift, std::abs(d.r), std::abs(d.g), std::abs(d.b)});
      out.mean[c] = next;
    }
    out.weight = weight;
    if (shift < kConvergence) break;
  }
  if (out.weight[0] == 0.0 || out.weight[1] == 0.0) {
    // Everything collapsed into one cluster: report the overall mean.
    Rgb sum;
    double n = 0.0;
    for (const auto& p : pts) {
      sum = sum + p.color * p.count;
      n += p.count;
    }
    const Rgb m = sum * (1.0 / n);
    out.mean = {m, m};
    out.weight = {n, 0.0};
    out.single_color = true;
  }
  return out;
}

std::array<Point, 4> corner_samples(const OrientedBox& box) {
  const Point c = box.center();
  const Point u = box.height_axis();
  const Point v = box.width_axis();
  const double a = std::max(0.0, 0.5 * box.width() - kCornerInset);
  const double b = std::max(0.0, 0.5 * box.height() - kCornerInset);
  return {c - v * a - u * b, c - v * a + u * b, c + v * a + u * b,
          c + v * a - u * b};
}

BoxColors extract_box_colors(const ImageBuffer& img, const OrientedBox& box) {
  const auto patch = sample_patch(img, box);
  const ColorClusters clusters = two_means(patch);
  if (clusters.single_color) {
    return {clusters.mean[0], clusters.mean[0]};
  }

  std::array<int, 2> votes{0, 0};
  for (const Point& p : corner_samples(box)) {
    const int x = std::clamp(static_cast<int>(std::floor(p.x)), 0, img.width() - 1);
    const int y = std::clamp(static_cast<int>(std::floor(p.y)), 0, img.height() - 1);
    ++votes[nearest(clusters.mean, img.at(x, y))];
  }
  int majority = 0;
  if (votes[1] > votes[0]) {
    majority = 1;
  } else if (votes[1] == votes[0] && clusters.weight[1] > clusters.weight[0]) {
    majority = 1;
  }

  const Rgb provisional = clusters.mean[majority];
  const int spine = nearest(clusters.mean, provisional);
  return {clusters.mean[spine], clusters.mean[1 - spine]};
}

}  // namespace spinebox
