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

#include "spinebox/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"
#include "spinebox/error.hpp"

namespace spinebox {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Book {
  OrientedBox spine;
  BookStyle style;
};

Rgb random_color(CounterRng& rng, int lo, int hi) {
  return {static_cast<double>(rng.uniform_int(lo, hi)),
          static_cast<double>(rng.uniform_int(lo, hi)),
          static_cast<double>(rng.uniform_int(lo, hi))};
}

BookStyle random_style(CounterRng& rng, double min_distance) {
  BookStyle s;
  s.spine = random_color(rng, 20, 235);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    s.text = random_color(rng, 0, 255);
    if (color_distance(s.spine, s.text) >= min_distance) return s;
  }
  s.text = {255.0 - s.spine.r, 255.0 - s.spine.g, 255.0 - s.spine.b};
  return s;
}

void fill(ImageBuffer& img, const OrientedBox& box, Rgb color) {
  for_each_pixel_in(box, img.width(), img.height(),
                    [&](int x, int y) { img.set(x, y, color); });
}

bool collides(const OrientedBox& candidate, const std::vector<Book>& placed,
              double gap) {
  const OrientedBox padded = candidate.resized(candidate.width() + 2.0 * gap,
                                               candidate.height() + 2.0 * gap);
  return std::any_of(placed.begin(), placed.end(), [&](const Book& b) {
    return intersection_area(padded, b.spine) > 0.0;
  });
}

void check_range(const char* field, ValueRange r, double lo, double hi) {
  if (!(r.lo <= r.hi) || r.lo < lo || r.hi > hi) {
    throw ConfigError(field, "range must satisfy " + std::to_string(lo) +
                                 " <= lo <= hi <= " + std::to_string(hi));
  }
}

void check_color(const char* field, Rgb c) {
  for (double v : {c.r, c.g, c.b}) {
    if (!(v >= 0.0 && v <= 255.0)) throw ConfigError(field, "channels must be in [0, 255]");
  }
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(mix64(key_) + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int CounterRng::uniform_int(int lo, int hi) {
  const double span = static_cast<double>(hi) - lo + 1.0;
  return std::min(hi, lo + static_cast<int>(std::floor(uniform() * span)));
}

double CounterRng::normal(double mean, double sigma) {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sigma * z;
}

void ShelfSpec::validate() const {
  if (images < 1) throw ConfigError("images", "must be >= 1");
  if (canvas_width < 16) throw ConfigError("canvas_width", "must be >= 16");
  if (canvas_height < 16) throw ConfigError("canvas_height", "must be >= 16");
  if (book_count.lo < 1 || book_count.lo > book_count.hi) {
    throw ConfigError("book_count", "range must satisfy 1 <= lo <= hi");
  }
  if (fragments.lo < 1 || fragments.lo > fragments.hi) {
    throw ConfigError("fragments", "range must satisfy 1 <= lo <= hi");
  }
  check_range("spine_angle_deg", spine_angle_deg, 1.0, 179.0);
  check_range("spine_width_px", spine_width_px, 4.0, 1e5);
  check_range("spine_height_px", spine_height_px, 4.0, 1e5);
  check_range("band_width_ratio", band_width_ratio, 1e-3, 1.0);
  check_range("band_length_ratio", band_length_ratio, 1e-3, 1.0);
  if (!(text_fill_width > 0.0 && text_fill_width <= 1.0)) {
    throw ConfigError("text_fill_width", "must be in (0, 1]");
  }
  if (!(text_fill_length > 0.0 && text_fill_length <= 1.0)) {
    throw ConfigError("text_fill_length", "must be in (0, 1]");
  }
  if (!(center_jitter_px >= 0.0)) throw ConfigError("center_jitter_px", "must be >= 0");
  if (!(angle_jitter_deg >= 0.0)) throw ConfigError("angle_jitter_deg", "must be >= 0");
  if (!(min_color_distance >= 0.0 && min_color_distance <= 400.0)) {
    throw ConfigError("min_color_distance", "must be in [0, 400]");
  }
  if (!(book_gap_px >= 0.0)) throw ConfigError("book_gap_px", "must be >= 0");
  if (!(margin_px >= 0.0)) throw ConfigError("margin_px", "must be >= 0");
  check_color("background", background);
  for (const auto& s : styles) {
    check_color("styles", s.spine);
    check_color("styles", s.text);
  }
}

SyntheticShelf generate(const ShelfSpec& spec) {
  spec.validate();
  CounterRng rng(spec.seed);
  const int n_books = rng.uniform_int(spec.book_count.lo, spec.book_count.hi);

  const double shelf_y = spec.canvas_height - spec.margin_px;
  std::vector<Book> books;
  for (int i = 0; i < n_books; ++i) {
    const double angle = rng.uniform(spec.spine_angle_deg.lo, spec.spine_angle_deg.hi);
    const double w = rng.uniform(spec.spine_width_px.lo, spec.spine_width_px.hi);
    const double h = rng.uniform(spec.spine_height_px.lo, spec.spine_height_px.hi);
    const BookStyle style = static_cast<std::size_t>(i) < spec.styles.size()
                                ? spec.styles[i]
                                : random_style(rng, spec.min_color_distance);

    const double t = angle * std::numbers::pi / 180.0;
    const double half_v = 0.5 * (h * std::sin(t) + w * std::abs(std::cos(t)));
    const double half_h = 0.5 * (h * std::abs(std::cos(t)) + w * std::sin(t));
    const double cy = shelf_y - half_v;
    if (cy - half_v < spec.margin_px) {
      throw Error(ErrorCode::kLayoutOverflow,
                  "book " + std::to_string(i) + " is taller than the canvas");
    }
    double cx = books.empty() ? spec.margin_px + half_h : books.back().spine.cx();
    OrientedBox spine(cx, cy, w, h, angle);
    while (collides(spine, books, spec.book_gap_px)) {
      cx += 1.0;
      spine = OrientedBox(cx, cy, w, h, angle);
    }
    if (cx + half_h > spec.canvas_width - spec.margin_px) {
      throw Error(ErrorCode::kLayoutOverflow,
                  std::to_string(n_books) + " books do not fit on a " +
                      std::to_string(spec.canvas_width) + " px wide canvas");
    }
    books.push_back({spine, style});
  }

  SyntheticShelf out;
  out.image = ImageBuffer(spec.canvas_width, spec.canvas_height, spec.background);
  for (std::size_t b = 0; b < books.size(); ++b) {
    const OrientedBox& spine = books[b].spine;
    out.truth.books.push_back(spine);
    out.book_colors.push_back({books[b].style.spine, books[b].style.text});
    fill(out.image, spine, books[b].style.spine);

    const int n_frag = rng.uniform_int(spec.fragments.lo, spec.fragments.hi);
    const double usable = 0.9 * spine.height();
    const double slot = usable / n_frag;
    const Point up = spine.height_axis();
    for (int k = 0; k < n_frag; ++k) {
      const double band_w =
          spine.width() * rng.uniform(spec.band_width_ratio.lo, spec.band_width_ratio.hi);
      const double band_len =
          slot * rng.uniform(spec.band_length_ratio.lo, spec.band_length_ratio.hi);
      const double along = 0.45 * spine.height() - slot * (k + 0.5);
      const Point c = spine.center() + up * along;
      const OrientedBox band(c.x, c.y, band_w, band_len, spine.angle());
      const OrientedBox text = band.resized(band_w * spec.text_fill_width,
                                            band_len * spec.text_fill_length);
      fill(out.image, text, books[b].style.text);

      const double dx = rng.normal(0.0, spec.center_jitter_px);
      const double dy = rng.normal(0.0, spec.center_jitter_px);
      const double da = rng.normal(0.0, spec.angle_jitter_deg);
      out.raw_boxes.push_back(band.translated(dx, dy).rotated(da));
      out.bands.push_back(band);
      out.text_rects.push_back(text);
      out.fragment_book.push_back(static_cast<int>(b));
    }
  }

  if (spec.horizontal) {
    const int w = out.image.width();
    out.image = rotate_quarter_turn(out.image);
    for (auto* list : {&out.raw_boxes, &out.bands, &out.text_rects, &out.truth.books}) {
      for (auto& box : *list) box = quarter_turn(box, w);
    }
  }
  return out;
}

ShelfSpec image_spec(const ShelfSpec& corpus, int index) {
  ShelfSpec s = corpus;
  s.images = 1;
  s.seed = mix64(corpus.seed ^ mix64(static_cast<std::uint64_t>(index) + 1));
  return s;
}

namespace {

using nlohmann::json;

ValueRange range_from(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(key, "expected [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

CountRange count_from(const json& v, const std::string& key) {
  const ValueRange r = range_from(v, key);
  if (r.lo != std::floor(r.lo) || r.hi != std::floor(r.hi)) {
    throw ConfigError(key, "expected integer bounds");
  }
  return {static_cast<int>(r.lo), static_cast<int>(r.hi)};
}

Rgb color_from(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(key, "expected [r, g, b]");
  for (const auto& c : v) {
    if (!c.is_number()) throw ConfigError(key, "expected [r, g, b]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

double number_from(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int int_from(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<int>();
}

}  // namespace

ShelfSpec parse_shelf_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<spec>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<spec>", "expected a JSON object");

  ShelfSpec s;
  for (const auto& [key, v] : doc.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw ConfigError(key, "expected a non-negative integer");
      }
      if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
        throw ConfigError(key, "expected a non-negative integer");
      }
      s.seed = v.get<std::uint64_t>();
    } else if (key == "images") s.images = int_from(v, key);
    else if (key == "canvas_width") s.canvas_width = int_from(v, key);
    else if (key == "canvas_height") s.canvas_height = int_from(v, key);
    else if (key == "book_count") s.book_count = count_from(v, key);
    else if (key == "spine_angle_deg") s.spine_angle_deg = range_from(v, key);
    else if (key == "spine_width_px") s.spine_width_px = range_from(v, key);
    else if (key == "spine_height_px") s.spine_height_px = range_from(v, key);
    else if (key == "fragments") s.fragments = count_from(v, key);
    else if (key == "band_width_ratio") s.band_width_ratio = range_from(v, key);
    else if (key == "band_length_ratio") s.band_length_ratio = range_from(v, key);
    else if (key == "text_fill_width") s.text_fill_width = number_from(v, key);
    else if (key == "text_fill_length") s.text_fill_length = number_from(v, key);
    else if (key == "center_jitter_px") s.center_jitter_px = number_from(v, key);
    else if (key == "angle_jitter_deg") s.angle_jitter_deg = number_from(v, key);
    else if (key == "min_color_distance") s.min_color_distance = number_from(v, key);
    else if (key == "book_gap_px") s.book_gap_px = number_from(v, key);
    else if (key == "margin_px") s.margin_px = number_from(v, key);
    else if (key == "background") s.background = color_from(v, key);
    else if (key == "horizontal") {
      if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
      s.horizontal = v.get<bool>();
    } else if (key == "styles") {
      if (!v.is_array()) throw ConfigError(key, "expected an array");
      for (const auto& st : v) {
        if (!st.is_object() || !st.contains("spine") || !st.contains("text")) {
          throw ConfigError(key, "each style needs \"spine\" and \"text\"");
        }
        s.styles.push_back({color_from(st["spine"], key), color_from(st["text"], key)});
      }
    } else {
      throw ConfigError(key, "unknown spec field");
    }
  }
  s.validate();
  return s;
}

}  // namespace spinebox
