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

#include <cstdint>
#include <string_view>
#include <vector>

#include "spinebox/color.hpp"
#include "spinebox/geometry.hpp"
#include "spinebox/image.hpp"
#include "spinebox/metrics.hpp"

namespace spinebox {

// Stateless 64-bit generator: draw n is a hash of (key, n), so a seed fixes
// every value on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  int uniform_int(int lo, int hi);        // [lo, hi]
  double normal(double mean, double sigma);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct CountRange {
  int lo = 0;
  int hi = 0;
};

struct BookStyle {
  Rgb spine;
  Rgb text;
};

// Parameters of one synthetic shelf photo (or, with `images`, a corpus).
//
// Each book is a solid spine rectangle carrying `fragments` word regions
// ("bands") centered on its axis. A band is what an ideal detector would
// return; inside it a solid text rectangle covers text_fill_width and
// text_fill_length of the band, the rest shows the spine color.
struct ShelfSpec {
  std::uint64_t seed = 1;
  int images = 1;
  int canvas_width = 1108;
  int canvas_height = 1478;
  CountRange book_count{3, 6};
  ValueRange spine_angle_deg{84.0, 96.0};
  ValueRange spine_width_px{70.0, 110.0};
  ValueRange spine_height_px{600.0, 1100.0};
  CountRange fragments{2, 4};
  ValueRange band_width_ratio{0.55, 0.8};   // of the spine width
  ValueRange band_length_ratio{0.5, 0.85};  // of the band's slot along the spine
  double text_fill_width = 0.85;
  double text_fill_length = 0.8;
  double center_jitter_px = 0.0;  // sigma
  double angle_jitter_deg = 0.0;  // sigma
  double min_color_distance = 80.0;
  double book_gap_px = 12.0;
  double margin_px = 20.0;
  Rgb background{40.0, 30.0, 25.0};
  // Explicit colors for the first books; the rest are drawn at random.
  std::vector<BookStyle> styles;
  // Lay the finished shelf on its side (a quarter turn clockwise).
  bool horizontal = false;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct SyntheticShelf {
  ImageBuffer image{1, 1};
  std::vector<OrientedBox> raw_boxes;  // detector-like fragments, with noise
  std::vector<OrientedBox> bands;      // the noise-free band of each fragment
  std::vector<int> fragment_book;      // owning book of each fragment
  std::vector<OrientedBox> text_rects; // solid text area of each band
  std::vector<BoxColors> book_colors;
  GroundTruth truth;                   // one spine rectangle per book
};

// Throws Error(kLayoutOverflow) when the books do not fit on the canvas.
SyntheticShelf generate(const ShelfSpec& spec);

// The spec for image `index` of a corpus: same parameters, derived seed.
ShelfSpec image_spec(const ShelfSpec& corpus, int index);

// Reads a ShelfSpec from JSON; keys mirror the field names, ranges are
// two-element arrays, colors three-element arrays.
ShelfSpec parse_shelf_spec(std::string_view json_text);

}  // namespace spinebox
