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

#include "spinebox/metrics.hpp"

#include <cmath>

#include "spinebox/error.hpp"

namespace spinebox {

std::vector<std::string> truth_warnings(const GroundTruth& truth) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < truth.books.size(); ++i) {
    for (std::size_t j = i + 1; j < truth.books.size(); ++j) {
      const double v = iou(truth.books[i], truth.books[j]);
      if (v > 0.5) {
        out.push_back(truth.image_id + ": books " + std::to_string(i) + " and " +
                      std::to_string(j) + " overlap with IoU " + std::to_string(v));
      }
    }
  }
  return out;
}

Assignment assign(std::span<const OrientedBox> predictions, const GroundTruth& truth) {
  Assignment out;
  out.per_book.resize(truth.books.size());
  for (std::size_t p = 0; p < predictions.size(); ++p) {
    double best_iou = 0.0;
    double best_dist = 0.0;
    std::size_t best = truth.books.size();
    for (std::size_t g = 0; g < truth.books.size(); ++g) {
      const double v = iou(predictions[p], truth.books[g]);
      if (v <= 0.0) continue;
      const double d = edbc(predictions[p], truth.books[g]);
      if (best == truth.books.size() || v > best_iou ||
          (v == best_iou && d < best_dist)) {
        best = g;
        best_iou = v;
        best_dist = d;
      }
    }
    if (best == truth.books.size()) {
      out.unassigned.push_back(p);
    } else {
      out.per_book[best].push_back(p);
    }
  }
  return out;
}

double box_accuracy(const Assignment& assignment) {
  if (assignment.per_book.empty()) {
    throw Error(ErrorCode::kEmptyTruth, "ground truth has no books");
  }
  std::size_t single = 0;
  for (const auto& preds : assignment.per_book) single += preds.size() == 1 ? 1 : 0;
  return static_cast<double>(single) / static_cast<double>(assignment.per_book.size());
}

double edbc(const OrientedBox& b, const OrientedBox& g) {
  return norm(b.center() - g.center());
}

double adm(const OrientedBox& b, const OrientedBox& g) {
  return std::abs(b.area() - g.area());
}

MetricsReport evaluate(std::span<const OrientedBox> predictions, const GroundTruth& truth) {
  const Assignment a = assign(predictions, truth);
  MetricsReport r;
  r.ba = box_accuracy(a);
  r.total_books = truth.books.size();
  r.false_boxes = a.unassigned.size();

  double sum_edbc = 0.0, sum_iou = 0.0, sum_adm = 0.0;
  for (std::size_t g = 0; g < a.per_book.size(); ++g) {
    if (a.per_book[g].size() != 1) continue;
    const OrientedBox& b = predictions[a.per_book[g].front()];
    sum_edbc += edbc(b, truth.books[g]);
    sum_iou += iou(b, truth.books[g]);
    sum_adm += adm(b, truth.books[g]);
    ++r.matched_books;
  }
  if (r.matched_books > 0) {
    const double n = static_cast<double>(r.matched_books);
    r.edbc_mean = sum_edbc / n;
    r.iou_mean = sum_iou / n;
    r.adm_mean = sum_adm / n;
  }
  return r;
}

MetricsReport aggregate(std::span<const MetricsReport> reports) {
  MetricsReport total;
  double sum_edbc = 0.0, sum_iou = 0.0, sum_adm = 0.0;
  for (const auto& r : reports) {
    total.matched_books += r.matched_books;
    total.total_books += r.total_books;
    total.false_boxes += r.false_boxes;
    if (r.matched_books == 0) continue;
    const double n = static_cast<double>(r.matched_books);
    sum_edbc += r.edbc_mean.value_or(0.0) * n;
    sum_iou += r.iou_mean.value_or(0.0) * n;
    sum_adm += r.adm_mean.value_or(0.0) * n;
  }
  if (total.total_books == 0) {
    throw Error(ErrorCode::kEmptyTruth, "corpus has no books");
  }
  total.ba = static_cast<double>(total.matched_books) /
             static_cast<double>(total.total_books);
  if (total.matched_books > 0) {
    const double n = static_cast<double>(total.matched_books);
    total.edbc_mean = sum_edbc / n;
    total.iou_mean = sum_iou / n;
    total.adm_mean = sum_adm / n;
  }
  return total;
}

}  // namespace spinebox
