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

#include "spinebox/color.hpp"
#include "spinebox/refine.hpp"
#include "spinebox/synth.hpp"

namespace {

// Full-size shelf: ten books of four fragments each.
const spinebox::SyntheticShelf& shelf() {
  static const spinebox::SyntheticShelf s = [] {
    spinebox::ShelfSpec spec;
    spec.seed = 10;
    spec.book_count = {10, 10};
    spec.fragments = {4, 4};
    spec.spine_width_px = {60, 85};
    spec.center_jitter_px = 3;
    spec.angle_jitter_deg = 2;
    return spinebox::generate(spec);
  }();
  return s;
}

void BM_GaussianFilter(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::gaussian_filter(shelf().image));
  }
}
BENCHMARK(BM_GaussianFilter)->Unit(benchmark::kMillisecond);

void BM_ExtractColors(benchmark::State& state) {
  const auto& s = shelf();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spinebox::extract_box_colors(s.image, s.raw_boxes[i++ % s.raw_boxes.size()]));
  }
}
BENCHMARK(BM_ExtractColors);

void BM_RefinePipeline(benchmark::State& state) {
  const auto& s = shelf();
  const spinebox::RefineConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::refine_pipeline(s.image, s.raw_boxes, cfg));
  }
  state.counters["raw_boxes"] = static_cast<double>(s.raw_boxes.size());
}
BENCHMARK(BM_RefinePipeline)->Unit(benchmark::kMillisecond);

void BM_NaivePipeline(benchmark::State& state) {
  const auto& s = shelf();
  const spinebox::RefineConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spinebox::naive_pipeline(s.raw_boxes, cfg));
  }
}
BENCHMARK(BM_NaivePipeline);

}  // namespace

BENCHMARK_MAIN();
