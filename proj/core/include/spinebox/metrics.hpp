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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinebox/geometry.hpp"

namespace spinebox {

// One box per physical book spine.
struct GroundTruth {
  std::string image_id;
  std::vector<OrientedBox> books;
};

// Pairs of books whose IoU exceeds 0.5; such truth is suspicious but legal.
std::vector<std::string> truth_warnings(const GroundTruth& truth);

struct Assignment {
  // per_book[i] lists prediction indices assigned to book i, ascending.
  std::vector<std::vector<std::size_t>> per_book;
  // Predictions that overlap no book at all.
  std::vector<std::size_t> unassigned;
};

// Each prediction goes to the book it overlaps most (IoU), ties to the
// nearer center, then to the lower book index.
Assignment assign(std::span<const OrientedBox> predictions, const GroundTruth& truth);

// Fraction of books with exactly one assigned prediction.
// Throws Error(kEmptyTruth) when there are no books.
double box_accuracy(const Assignment& assignment);

// Distance between centers.
double edbc(const OrientedBox& b, const OrientedBox& g);
// Absolute area difference.
double adm(const OrientedBox& b, const OrientedBox& g);

struct MetricsReport {
  double ba = 0.0;
  // Means over books with exactly one prediction; empty when there are none.
  std::optional<double> edbc_mean;
  std::optional<double> iou_mean;
  std::optional<double> adm_mean;
  std::size_t matched_books = 0;
  std::size_t total_books = 0;
  std::size_t false_boxes = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Throws Error(kEmptyTruth).
MetricsReport evaluate(std::span<const OrientedBox> predictions, const GroundTruth& truth);

// Corpus totals: BA over all books, means over all matched books.
// Throws Error(kEmptyTruth) if the reports hold no books.
MetricsReport aggregate(std::span<const MetricsReport> reports);

}  // namespace spinebox
