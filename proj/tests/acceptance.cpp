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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "scenes.hpp"
#include "spinebox/color.hpp"
#include "spinebox/geometry.hpp"
#include "spinebox/io.hpp"
#include "spinebox/metrics.hpp"
#include "spinebox/refine.hpp"
#include "spinebox/synth.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace spinebox;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

// 1. Polygon IoU against sampled IoU.
Outcome iou_oracle() {
  const auto t0 = Clock::now();
  oracle::Gen g(1001);
  const oracle::RowRaster raster(0.1);
  double worst = 0.0;
  int overlapping = 0;
  for (int i = 0; i < 500; ++i) {
    const OrientedBox a = testing::random_box(g, 200.0, 4.0, 90.0);
    OrientedBox b = testing::random_box(g, 200.0, 4.0, 90.0);
    // Half the pairs are pulled onto each other so most of them overlap.
    if (i % 2 == 0) {
      b = OrientedBox(a.cx() + g.uniform(-20, 20), a.cy() + g.uniform(-20, 20), b.width(),
                      b.height(), b.angle());
    }
    const double want = raster.iou(testing::to_rect(a), testing::to_rect(b));
    if (want > 0) ++overlapping;
    worst = std::max(worst, std::abs(iou(a, b) - want));
  }
  const double secs = seconds_since(t0);
  return {worst < 5e-3 && secs < 30.0,
          fmt("500 pairs (%.0f overlapping), max |diff| %.2e, %.1f s", overlapping, worst, secs)};
}

// 2. The worked book-range example.
Outcome book_range_example() {
  const BookRange r = book_range(OrientedBox(500, 200, 100, 40, 45), 1000);
  const auto lit = oracle::literal_book_range(500, 200, 100, 40, 45, 1000);
  const double diffs[] = {std::abs(r.box_w - 98.995), std::abs(r.height - 1201.37),
                          std::abs(r.cx - 124.75), std::abs(r.cy - 575.25),
                          std::abs(r.box_w - lit.box_w), std::abs(r.height - lit.height),
                          std::abs(r.cx - lit.x), std::abs(r.cy - lit.y)};
  const double worst = *std::max_element(std::begin(diffs), std::end(diffs));
  return {worst < 0.01, fmt("box_w %.3f height %.2f x %.2f y %.2f", r.box_w, r.height, r.cx,
                            r.cy) +
                            fmt(", max diff %.1e", worst)};
}

bool within(Rgb a, Rgb b, double tol) {
  return std::abs(a.r - b.r) <= tol && std::abs(a.g - b.g) <= tol && std::abs(a.b - b.b) <= tol;
}

// 3. Two-color recovery on synthetic bands.
Outcome color_exactness() {
  int ok = 0;
  double min_sep = 1e9;
  for (int seed = 0; seed < 100; ++seed) {
    ShelfSpec spec;
    spec.seed = 3000 + seed;
    spec.canvas_width = 700;
    spec.canvas_height = 900;
    spec.book_count = {1, 4};
    spec.spine_height_px = {400, 800};
    const SyntheticShelf shelf = generate(spec);
    const std::size_t f = static_cast<std::size_t>(seed) % shelf.bands.size();
    const BoxColors& truth = shelf.book_colors[shelf.fragment_book[f]];
    min_sep = std::min(min_sep, color_distance(truth.spine, truth.text));
    const BoxColors got = extract_box_colors(shelf.image, shelf.bands[f]);
    if (within(got.spine, truth.spine, 2.0) && within(got.text, truth.text, 2.0)) ++ok;
  }
  return {ok == 100 && min_sep >= 80.0,
          fmt("%.0f/100 recovered, smallest spine-text distance %.1f", ok, min_sep)};
}

// Independent grouping: the range is tested point by point on a 0.25 px grid.
using Partition = std::set<std::vector<std::size_t>>;

Partition oracle_grouping(const DetectionSet& ds, double image_h, const RefineConfig& cfg) {
  constexpr double kStep = 0.25;
  Partition out;
  std::vector<std::size_t> remaining(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) remaining[i] = i;
  while (!remaining.empty()) {
    const Detection& f = ds[remaining.front()];
    const double t = oracle::rad(f.box.angle());
    const double s = std::sin(t), c = std::abs(std::cos(t));
    std::vector<std::size_t> group{remaining.front()}, rest;
    const double box_w = f.box.height() * c + f.box.width() * s;
    const double top = std::min(c > 0 ? box_w / (2 * c) : 1e300, f.box.cy() / s);
    const double bottom = -(std::max(image_h, f.box.cy()) - f.box.cy()) / s;
    const double half_w = cfg.wide_range_rate * f.box.width() / 2;
    auto in_range = [&](double x, double y) {
      const double dx = x - f.box.cx(), dy = y - f.box.cy();
      const double along = dx * std::cos(t) - dy * std::sin(t);
      const double across = dx * std::sin(t) + dy * std::cos(t);
      return std::abs(across) <= half_w && along <= top && along >= bottom;
    };
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      const Detection& d = ds[remaining[k]];
      const auto dist = [](Rgb a, Rgb b) {
        return std::sqrt((a.r - b.r) * (a.r - b.r) + (a.g - b.g) * (a.g - b.g) +
                         (a.b - b.b) * (a.b - b.b));
      };
      bool joins = false;
      if (dist(f.colors.text, d.colors.text) < cfg.threshold_text &&
          dist(f.colors.spine, d.colors.spine) < cfg.threshold_spine) {
        const oracle::Rect r = testing::to_rect(d.box);
        const oracle::Bounds b = oracle::bounds(r);
        std::int64_t all = 0, in = 0;
        oracle::count_samples(b.x0, b.y0, b.x1, b.y1, kStep, [&](double x, double y) {
          if (!oracle::inside(r, x, y)) return false;
          ++all;
          if (in_range(x, y)) ++in;
          return false;
        });
        joins = all > 0 && static_cast<double>(in) / static_cast<double>(all) > 0.5;
      }
      (joins ? group : rest).push_back(remaining[k]);
    }
    std::sort(group.begin(), group.end());
    out.insert(group);
    remaining = rest;
  }
  return out;
}

// 4. Grouping against the oracle and the generator's labels.
Outcome grouping_oracle() {
  const RefineConfig cfg;
  int same_as_oracle = 0, same_as_labels = 0, fragments = 0;
  for (int seed = 0; seed < 200; ++seed) {
    oracle::Gen g(4000 + seed);
    ShelfSpec spec;
    spec.seed = 4000 + seed;
    spec.canvas_width = 640;
    spec.canvas_height = 900;
    spec.book_count = {1, 3};
    spec.fragments = {1, 2};
    spec.spine_width_px = {50, 90};
    spec.spine_height_px = {300, 800};
    spec.center_jitter_px = g.uniform(0.0, 1.5);
    spec.angle_jitter_deg = g.uniform(0.0, 1.0);
    const SyntheticShelf shelf = generate(spec);
    fragments = std::max(fragments, static_cast<int>(shelf.raw_boxes.size()));

    const ImageBuffer filtered = gaussian_filter(shelf.image);
    const DetectionSet ds = DetectionSet::from_image(filtered, shelf.raw_boxes);
    Partition got;
    for (const auto& grp : grouping(ds, filtered.height(), cfg)) got.insert(grp.indices);
    if (got == oracle_grouping(ds, filtered.height(), cfg)) ++same_as_oracle;

    std::map<int, std::vector<std::size_t>> by_book;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto it = std::find(shelf.raw_boxes.begin(), shelf.raw_boxes.end(), ds[i].box);
      by_book[shelf.fragment_book[it - shelf.raw_boxes.begin()]].push_back(i);
    }
    Partition labels;
    for (const auto& [book, idx] : by_book) labels.insert(idx);
    if (got == labels) ++same_as_labels;
  }
  return {same_as_oracle == 200 && same_as_labels == 200 && fragments <= 6,
          fmt("%.0f/200 match the oracle, %.0f/200 match the labels, up to %.0f fragments",
              same_as_oracle, same_as_labels, fragments)};
}

// 5. Location adjust undoes a 3 px sideways displacement.
Outcome adjust_recovery() {
  RefineConfig cfg;
  cfg.adjust_range_px = 5;
  int close = 0, no_loss = 0;
  for (int seed = 0; seed < 200; ++seed) {
    ShelfSpec spec;
    spec.seed = 5000 + seed;
    spec.canvas_width = 640;
    spec.canvas_height = 900;
    spec.book_count = {1, 3};
    spec.spine_height_px = {400, 800};
    const SyntheticShelf shelf = generate(spec);
    const ImageBuffer filtered = gaussian_filter(shelf.image);
    const std::size_t f = static_cast<std::size_t>(seed) % shelf.bands.size();
    const OrientedBox& band = shelf.bands[f];
    const double sign = seed % 2 == 0 ? 1.0 : -1.0;
    const Point step = band.width_axis() * (3.0 * sign);
    const Detection det{band.translated(step.x, step.y),
                        shelf.book_colors[shelf.fragment_book[f]]};
    const AdjustChoice c = adjust_box(filtered, det, ShiftMode::kLocation, cfg);
    if (norm(c.pose.center() - band.center()) <= 1.0) ++close;
    if (c.score >= c.score_at_zero) ++no_loss;
  }
  return {close >= 190 && no_loss == 200,
          fmt("%.0f/200 within 1 px of the band center, score kept in %.0f/200", close,
              no_loss)};
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

int run_cli(std::vector<std::string> args, std::string* err = nullptr) {
  args.insert(args.begin(), "spinebox");
  std::ostringstream out, e;
  const int code = spinebox::cli::run(args, out, e);
  if (err != nullptr) *err = e.str();
  return code;
}

// 6. Ablation ordering on a synthetic corpus, through the ablate command.
Outcome ablation_ordering(const fs::path& corpus, const fs::path& work) {
  std::string err;
  if (run_cli({"ablate", "--corpus", corpus.string(), "--out", (work / "ablation.json").string(),
           "--jobs", "1"},
          &err) != 0) {
    return {false, "ablate failed: " + err};
  }
  const Report rep = read_report(work / "ablation.json", ReportFormat::kJson);
  const double naive = rep.rows.at(0).metrics.ba;
  const double grouped = rep.rows.at(1).metrics.ba;
  const double full = rep.rows.at(3).metrics.ba;
  return {grouped - naive >= 0.2 && full >= grouped,
          fmt("BA naive %.4f, grouping %.4f, +location %.4f, +location+angle %.4f", naive,
              grouped, rep.rows.at(2).metrics.ba, full)};
}

// 7. Pipeline invariants on random scenes.
Outcome invariants() {
  const RefineConfig cfg;
  int ok = 0;
  std::string first;
  for (int seed = 0; seed < 500; ++seed) {
    const std::string why = testing::pipeline_invariant_violation(testing::random_scene(7000 + seed), cfg);
    if (why.empty()) {
      ++ok;
    } else if (first.empty()) {
      first = "seed " + std::to_string(7000 + seed) + ": " + why;
    }
  }
  return {ok == 500, fmt("%.0f/500 scenes hold", ok) + (first.empty() ? "" : "; " + first)};
}

// 8. Metrics on hand-built fixtures against a per-book count.
Outcome metrics_arithmetic() {
  // Four books; predictions per book 1, 2, 0, 1.
  GroundTruth truth{"fixture", {}};
  for (int i = 0; i < 4; ++i) truth.books.emplace_back(100 + 200 * i, 300, 80, 400, 90);
  std::vector<OrientedBox> preds{{102, 301, 78, 390, 90},
                                 {300, 200, 80, 150, 90},
                                 {300, 420, 80, 150, 90},
                                 {697, 305, 84, 396, 89}};
  const MetricsReport r = evaluate(preds, truth);
  bool ok = r.ba == 0.5;
  const double edbc_want = (std::hypot(2, 1) + std::hypot(3, 5)) / 2;
  const double adm_want = (std::abs(80 * 400 - 78 * 390) + std::abs(80 * 400 - 84 * 396)) / 2.0;
  ok = ok && r.edbc_mean && std::abs(*r.edbc_mean - edbc_want) < 1e-9 && r.adm_mean &&
       std::abs(*r.adm_mean - adm_want) < 1e-9;

  // Random fixtures: books on a grid, each prediction lies on one book only.
  oracle::Gen g(8000);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GroundTruth t{"random", {}};
    const int n = g.integer(1, 8);
    for (int i = 0; i < n; ++i) {
      t.books.emplace_back(60 + 120 * i, g.uniform(200, 300), g.uniform(40, 80),
                           g.uniform(150, 300), g.uniform(80, 100));
    }
    std::vector<OrientedBox> p;
    std::vector<std::vector<OrientedBox>> per_book(n);
    for (int i = 0; i < n; ++i) {
      const int k = g.integer(0, 3);
      for (int j = 0; j < k; ++j) {
        const OrientedBox& b = t.books[i];
        per_book[i].emplace_back(b.cx() + g.uniform(-4, 4), b.cy() + g.uniform(-30, 30),
                                 g.uniform(20, 40), g.uniform(40, 120), b.angle());
        p.push_back(per_book[i].back());
      }
    }
    for (int j = g.integer(0, 2); j > 0; --j) p.emplace_back(g.uniform(0, 900), 1000, 10, 10, 90);
    std::size_t single = 0;
    double e = 0, a = 0;
    for (int i = 0; i < n; ++i) {
      if (per_book[i].size() != 1) continue;
      ++single;
      const OrientedBox& q = per_book[i][0];
      const OrientedBox& b = t.books[i];
      e += std::hypot(q.cx() - b.cx(), q.cy() - b.cy());
      a += std::abs(q.width() * q.height() - b.width() * b.height());
    }
    const MetricsReport m = evaluate(p, t);
    bool same = m.ba == static_cast<double>(single) / n && m.matched_books == single;
    if (single == 0) {
      same = same && !m.edbc_mean && !m.adm_mean;
    } else {
      same = same && std::abs(*m.edbc_mean - e / single) < 1e-9 &&
             std::abs(*m.adm_mean - a / single) < 1e-9;
    }
    if (same) ++agree;
  }
  return {ok && agree == 200,
          fmt("[1,2,0,1] fixture BA %.4f, %.0f/200 random fixtures agree", r.ba, agree)};
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_text(e.path());
  }
  return out;
}

// 9. --jobs 1 and --jobs 8 give the same files.
Outcome jobs_determinism(const fs::path& corpus, const fs::path& work) {
  for (const char* jobs : {"1", "8"}) {
    const fs::path out = work / (std::string("jobs") + jobs);
    if (run_cli({"refine", "--images", corpus.string(), "--detections", corpus.string(), "--gt",
             corpus.string(), "--render", "--out", (out / "refine").string(), "--jobs", jobs}) !=
            0 ||
        run_cli({"ablate", "--corpus", corpus.string(), "--out", (out / "ablate" / "report").string(),
             "--jobs", jobs}) != 0) {
      return {false, std::string("command failed with --jobs ") + jobs};
    }
  }
  auto a = tree(work / "jobs1"), b = tree(work / "jobs8");
  std::size_t files = a.size();
  // The manifest records wall-clock timings; everything else in it must match.
  const std::string manifest = "refine/manifest.json";
  auto strip = [](const std::string& text) {
    auto j = nlohmann::json::parse(text);
    j.erase("timings_ms");
    return j.dump();
  };
  const bool manifests = a.count(manifest) && b.count(manifest) &&
                         strip(a[manifest]) == strip(b[manifest]);
  a.erase(manifest);
  b.erase(manifest);
  return {a == b && manifests && files > 2,
          fmt("%.0f files compared, ", static_cast<double>(files)) + (a == b ? "outputs identical" : "outputs differ") +
              (manifests ? ", manifest identical apart from timings" : ", manifest differs")};
}

// 10. A full-size image with 40 raw boxes.
Outcome performance() {
  ShelfSpec spec;
  spec.seed = 10;
  spec.book_count = {10, 10};
  spec.fragments = {4, 4};
  spec.spine_width_px = {60, 85};
  spec.center_jitter_px = 3;
  spec.angle_jitter_deg = 2;
  const SyntheticShelf shelf = generate(spec);
  const RefineConfig cfg;
  double worst = 0;
  std::size_t kept = 0;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = Clock::now();
    kept = refine_pipeline(shelf.image, shelf.raw_boxes, cfg).size();
    worst = std::max(worst, seconds_since(t0));
  }
  return {shelf.image.width() == 1108 && shelf.image.height() == 1478 &&
              shelf.raw_boxes.size() == 40 && worst < 2.0,
          fmt("%.0f x %.0f, %.0f raw boxes -> ", shelf.image.width(), shelf.image.height(),
              static_cast<double>(shelf.raw_boxes.size())) +
              fmt("%.0f, slowest of 3 runs %.3f s", static_cast<double>(kept), worst)};
}

}  // namespace

int main() {
  testing::TempDir work("acceptance");
  const fs::path corpus = work / "corpus";
  write_text(work / "corpus.json",
             R"({"seed": 2026, "images": 20, "book_count": [3, 6], "fragments": [2, 4],
                 "center_jitter_px": 3, "angle_jitter_deg": 2})");
  std::string err;
  if (run_cli({"synth", "--spec", (work / "corpus.json").string(), "--out", corpus.string()}, &err) !=
      0) {
    std::printf("corpus generation failed: %s\n", err.c_str());
    return 1;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"geometry oracle", iou_oracle},
      {"book range example", book_range_example},
      {"color extraction", color_exactness},
      {"grouping oracle", grouping_oracle},
      {"adjust recovery", adjust_recovery},
      {"ablation ordering", [&] { return ablation_ordering(corpus, work.path()); }},
      {"pipeline invariants", invariants},
      {"metrics arithmetic", metrics_arithmetic},
      {"jobs determinism", [&] { return jobs_determinism(corpus, work.path()); }},
      {"performance", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %-20s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
