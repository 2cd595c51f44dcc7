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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "spinebox/geometry.hpp"

namespace {

using spinebox::OrientedBox;

std::vector<OrientedBox> random_boxes(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> pos(40, 160), size(5, 80), angle(1, 180);
  std::vector<OrientedBox> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(pos(rng), pos(rng), size(rng), size(rng), angle(rng));
  }
  return out;
}

void BM_Iou(benchmark::State& state) {
  const auto boxes = random_boxes(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::iou(boxes[i % 1024], boxes[(i * 7 + 3) % 1024]));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_BookRange(benchmark::State& state) {
  const auto boxes = random_boxes(1024, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::book_range(boxes[i++ % 1024], 1478.0));
  }
}
BENCHMARK(BM_BookRange);

void BM_EnclosingBox(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::enclosing_box(boxes));
  }
}
BENCHMARK(BM_EnclosingBox)->Arg(2)->Arg(4)->Arg(16);

}  // namespace
