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
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "spinebox/error.hpp"
#include "spinebox/io.hpp"

namespace spinebox {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      out.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t j = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > j) out.push_back(line.substr(j, i - j));
    }
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::string text = ss.str();
  // ICDAR dumps often start with a UTF-8 byte order mark.
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
  return text;
}

// Builds a box from 5 or 8 finite numbers; returns an error string otherwise.
std::string box_from_numbers(std::span<const double> nums, BoxFile& out) {
  for (double v : nums) {
    if (!std::isfinite(v)) return "non-finite coordinate";
  }
  try {
    if (nums.size() == 5) {
      out.boxes.emplace_back(nums[0], nums[1], nums[2], nums[3], nums[4]);
    } else if (nums.size() == 8) {
      const std::array<Point, 4> quad{Point{nums[0], nums[1]}, Point{nums[2], nums[3]},
                                      Point{nums[4], nums[5]}, Point{nums[6], nums[7]}};
      double dev = 0.0;
      out.boxes.push_back(fit_quad(quad, &dev));
      out.max_fit_deviation = std::max(out.max_fit_deviation, dev);
      if (dev > kQuadFitWarnPx) {
        out.warnings.push_back("quad " + std::to_string(out.boxes.size()) +
                               " is not a rectangle (fit deviation " +
                               std::to_string(dev) + " px)");
      }
    } else {
      return "expected 5 or 8 numbers, got " + std::to_string(nums.size());
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

BoxFile parse_text_boxes(const std::filesystem::path& path, const std::string& text) {
  BoxFile out;
  out.source = path;
  std::vector<std::string> labels;
  bool any_label = false;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    std::vector<double> nums;
    std::string label;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto v = parse_number(fields[i]);
      if (v) {
        nums.push_back(*v);
      } else if (i + 1 == fields.size() && (nums.size() == 5 || nums.size() == 8)) {
        label = std::string(fields[i]);
        any_label = true;
      } else {
        throw ParseError(path.string(), line_no,
                         "field '" + std::string(fields[i]) + "' is not a number");
      }
    }
    const std::string err = box_from_numbers(nums, out);
    if (!err.empty()) throw ParseError(path.string(), line_no, err);
    labels.push_back(std::move(label));
  }
  if (any_label) out.labels = std::move(labels);
  return out;
}

BoxFile parse_json_boxes(const std::filesystem::path& path, const std::string& text) {
  BoxFile out;
  out.source = path;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 1, e.what());
  }
  if (!doc.is_object() || !doc.contains("boxes") || !doc["boxes"].is_array()) {
    throw ParseError(path.string(), 1, "expected an object with a \"boxes\" array");
  }
  if (doc.contains("image") && doc["image"].is_string()) {
    out.image = doc["image"].get<std::string>();
  }
  std::size_t i = 0;
  for (const auto& row : doc["boxes"]) {
    ++i;
    std::vector<double> nums;
    if (row.is_array()) {
      for (const auto& v : row) {
        if (!v.is_number()) {
          throw ParseError(path.string(), 1, "box " + std::to_string(i) + " has a non-number");
        }
        nums.push_back(v.get<double>());
      }
    }
    const std::string err = box_from_numbers(nums, out);
    if (!err.empty()) throw ParseError(path.string(), 1, "box " + std::to_string(i) + ": " + err);
  }
  if (doc.contains("labels") && doc["labels"].is_array()) {
    for (const auto& l : doc["labels"]) out.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    if (out.labels.size() != out.boxes.size()) {
      throw ParseError(path.string(), 1, "labels and boxes differ in length");
    }
  }
  return out;
}

std::string image_stem(const std::filesystem::path& path) {
  std::string name = path.filename().string();
  for (std::string_view suffix : {".boxes.txt", ".boxes.json", ".gt.txt", ".gt.json"}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return path.stem().string();
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

OrientedBox fit_quad(std::span<const Point, 4> quad, double* deviation) {
  const OrientedBox box = min_area_rect(quad, quad[2] - quad[1]);
  if (deviation != nullptr) {
    const auto rect = corner_points(box);
    double worst = 0.0;
    for (const Point& q : quad) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Point& r : rect) nearest = std::min(nearest, norm(q - r));
      worst = std::max(worst, nearest);
    }
    *deviation = worst;
  }
  return box;
}

BoxFile load_boxes(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  BoxFile out = path.extension() == ".json" ? parse_json_boxes(path, text)
                                            : parse_text_boxes(path, text);
  if (out.image.empty()) out.image = image_stem(path);
  return out;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  BoxFile f = load_boxes(path);
  return {f.image, std::move(f.boxes)};
}

std::string format_boxes(std::span<const OrientedBox> boxes) {
  std::string out;
  for (const auto& b : boxes) {
    out += format_number(b.cx()) + "," + format_number(b.cy()) + "," +
           format_number(b.width()) + "," + format_number(b.height()) + "," +
           format_number(b.angle()) + "\n";
  }
  return out;
}

void write_boxes(const std::filesystem::path& path, std::span<const OrientedBox> boxes) {
  write_file_atomic(path, format_boxes(boxes));
}

// ---------------------------------------------------------------------------
// Config

namespace {

constexpr std::array<std::string_view, 11> kConfigFields = {
    "adjust_range_px", "adjust_range_deg", "threshold_text",
    "threshold_spine", "wide_range_rate", "shrink_x",
    "shrink_y",        "nms_iou",          "min_edge_px",
    "enable_adjust_location", "enable_adjust_angle"};

double number_field(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int integer_field(const json& v, const std::string& key) {
  const double d = number_field(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e6) {
    throw ConfigError(key, "expected an integer");
  }
  return static_cast<int>(d);
}

bool bool_field(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

}  // namespace

std::span<const std::string_view> config_field_names() { return kConfigFields; }

RefineConfig apply_config_json(RefineConfig cfg, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<config>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<config>", "expected a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "adjust_range_px") cfg.adjust_range_px = integer_field(v, key);
    else if (key == "adjust_range_deg") cfg.adjust_range_deg = integer_field(v, key);
    else if (key == "threshold_text") cfg.threshold_text = number_field(v, key);
    else if (key == "threshold_spine") cfg.threshold_spine = number_field(v, key);
    else if (key == "wide_range_rate") cfg.wide_range_rate = number_field(v, key);
    else if (key == "shrink_x") cfg.shrink_x = number_field(v, key);
    else if (key == "shrink_y") cfg.shrink_y = number_field(v, key);
    else if (key == "nms_iou") cfg.nms_iou = number_field(v, key);
    else if (key == "min_edge_px") cfg.min_edge_px = number_field(v, key);
    else if (key == "enable_adjust_location") cfg.enable_adjust_location = bool_field(v, key);
    else if (key == "enable_adjust_angle") cfg.enable_adjust_angle = bool_field(v, key);
    else throw ConfigError(key, "unknown config field");
  }
  cfg.validate();
  return cfg;
}

RefineConfig load_config(const std::filesystem::path& path) {
  return apply_config_json(RefineConfig{}, read_text(path));
}

std::string config_to_json(const RefineConfig& cfg) {
  json doc = json::object();
  doc["adjust_range_px"] = cfg.adjust_range_px;
  doc["adjust_range_deg"] = cfg.adjust_range_deg;
  doc["threshold_text"] = cfg.threshold_text;
  doc["threshold_spine"] = cfg.threshold_spine;
  doc["wide_range_rate"] = cfg.wide_range_rate;
  doc["shrink_x"] = cfg.shrink_x;
  doc["shrink_y"] = cfg.shrink_y;
  doc["nms_iou"] = cfg.nms_iou;
  doc["min_edge_px"] = cfg.min_edge_px;
  doc["enable_adjust_location"] = cfg.enable_adjust_location;
  doc["enable_adjust_angle"] = cfg.enable_adjust_angle;
  return doc.dump(2);
}

}  // namespace spinebox
