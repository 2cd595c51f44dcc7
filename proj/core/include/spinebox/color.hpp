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

#include <array>
#include <span>
#include <vector>

#include "spinebox/geometry.hpp"
#include "spinebox/image.hpp"

namespace spinebox {

// Binary color model of a box: the background (spine) color and the text
// string color.
struct BoxColors {
  Rgb spine;
  Rgb text;

  friend bool operator==(const BoxColors&, const BoxColors&) = default;
};

inline constexpr int kGaussianSize = 5;
inline constexpr double kGaussianSigma = 1.1;

// Normalized 1-D taps of the separable 5x5 Gaussian.
std::array<double, kGaussianSize> gaussian_kernel();

// 5x5 Gaussian (sigma 1.1), borders replicated.
ImageBuffer gaussian_filter(const ImageBuffer& img);

// Pixels whose centers fall inside the box, clipped to the image, row-major.
// Throws Error(kEmptyPatch) if there are none.
std::vector<Rgb> sample_patch(const ImageBuffer& img, const OrientedBox& box);

// Per-channel mean of sample_patch(). Throws Error(kEmptyPatch).
Rgb mean_color(const ImageBuffer& img, const OrientedBox& box);

// Result of two-means clustering. When the input holds a single distinct
// color both means equal it and single_color is set.
struct ColorClusters {
  std::array<Rgb, 2> mean;
  std::array<double, 2> weight{0.0, 0.0};
  bool single_color = false;
};

// k-means with k = 2 in RGB. Seeds are the two most distant colors, at most
// 20 Lloyd iterations, stop once no mean moves 0.5 or more in any channel.
// The result does not depend on the order of `colors`.
ColorClusters two_means(std::span<const Rgb> colors);

// Sample points at the four box corners, pulled 2 px toward the center along
// both box axes.
std::array<Point, 4> corner_samples(const OrientedBox& box);

// Clusters the patch into two colors; the cluster holding the majority of
// the four corner samples is the spine, the other is the text.
// Throws Error(kEmptyPatch).
BoxColors extract_box_colors(const ImageBuffer& img, const OrientedBox& box);

}  // namespace spinebox
