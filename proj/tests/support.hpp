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
#include <filesystem>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "spinebox/geometry.hpp"

namespace testing {

inline oracle::Rect to_rect(const spinebox::OrientedBox& b) {
  return {b.cx(), b.cy(), b.width(), b.height(), b.angle()};
}

inline spinebox::OrientedBox random_box(oracle::Gen& g, double canvas, double min_size,
                                        double max_size) {
  const double w = g.uniform(min_size, max_size);
  const double h = g.uniform(min_size, max_size);
  const double m = 0.5 * std::max(w, h);
  return {g.uniform(m, canvas - m), g.uniform(m, canvas - m), w, h, g.uniform(0.5, 180.0)};
}

// Difference of two angles in degrees modulo 180, in [0, 90].
inline double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 180.0);
  return std::min(d, 180.0 - d);
}

// A fresh empty directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("spinebox_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
