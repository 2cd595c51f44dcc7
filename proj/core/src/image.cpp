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

#include "spinebox/image.hpp"

#include <string>

#include "spinebox/error.hpp"

namespace spinebox {

double color_distance(Rgb a, Rgb b) {
  const Rgb d = a - b;
  return std::sqrt(d.r * d.r + d.g * d.g + d.b * d.b);
}

ImageBuffer::ImageBuffer(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be >= 1, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  data_.resize(3 * static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = static_cast<float>(fill.r);
    data_[i + 1] = static_cast<float>(fill.g);
    data_[i + 2] = static_cast<float>(fill.b);
  }
}

ImageBuffer rotate_quarter_turn(const ImageBuffer& img) {
  const int w = img.width();
  const int h = img.height();
  ImageBuffer out(h, w);
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < h; ++x) {
      out.set(x, y, img.at(w - 1 - y, x));
    }
  }
  return out;
}

OrientedBox quarter_turn(const OrientedBox& box, int source_width) {
  return {box.cy(), source_width - box.cx(), box.width(), box.height(),
          box.angle() + 90.0};
}

OrientedBox undo_quarter_turn(const OrientedBox& box, int source_width) {
  return {source_width - box.cy(), box.cx(), box.width(), box.height(),
          box.angle() - 90.0};
}

}  // namespace spinebox
