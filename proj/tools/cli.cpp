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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinebox/error.hpp"
#include "spinebox/io.hpp"
#include "spinebox/metrics.hpp"
#include "spinebox/refine.hpp"
#include "spinebox/synth.hpp"

namespace spinebox::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";

const std::array<std::string, 4> kAblationRows = {
    "naive", "grouping", "grouping+adjusting(location)",
    "grouping+adjusting(location+angle)"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_file(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> collect_images(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && is_image_file(entry.path()) &&
            entry.path().filename().string().find(".annotated.") == std::string::npos) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.push_back(p);
    } else {
      throw Error(ErrorCode::kIoError, "no such image or directory: " + in);
    }
  }
  return out;
}

// `<dir>/<stem><kind>.txt`, falling back to the .json sidecar.
std::optional<fs::path> find_box_file(const fs::path& dir, const std::string& stem,
                                      const std::string& kind) {
  for (const char* ext : {".txt", ".json"}) {
    fs::path p = dir / (stem + kind + ext);
    if (fs::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

// Stems of every `<stem><kind>.{txt,json}` in dir, sorted, unique.
std::vector<std::string> box_file_stems(const fs::path& dir, const std::string& kind) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "no such directory: " + dir.string());
  }
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    for (const std::string ext : {".txt", ".json"}) {
      const std::string suffix = kind + ext;
      if (name.size() > suffix.size() &&
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        stems.push_back(name.substr(0, name.size() - suffix.size()));
      }
    }
  }
  std::sort(stems.begin(), stems.end());
  stems.erase(std::unique(stems.begin(), stems.end()), stems.end());
  return stems;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "cannot create directory " + dir.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strips a trailing .json/.csv so `--out report.json` and `--out report`
// both produce report.json and report.csv.
fs::path report_prefix(const std::string& out) {
  fs::path p(out);
  const std::string ext = lower(p.extension().string());
  if (ext == ".json" || ext == ".csv") p.replace_extension();
  return p;
}

void write_report_pair(const Report& report, const fs::path& prefix) {
  if (prefix.has_parent_path()) ensure_directory(prefix.parent_path());
  fs::path json_path = prefix, csv_path = prefix;
  json_path += ".json";
  csv_path += ".csv";
  write_report(report, json_path, ReportFormat::kJson);
  write_report(report, csv_path, ReportFormat::kCsv);
}

std::string fmt_optional(const std::optional<double>& v, int precision) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, *v);
  return buf;
}

void print_table(const Report& report, std::ostream& out) {
  auto line = [&](const std::string& name, const MetricsReport& m) {
    char ba[32];
    std::snprintf(ba, sizeof(ba), "%.4f", m.ba);
    out << name << "\t" << ba << "\t" << fmt_optional(m.edbc_mean, 2) << "\t"
        << fmt_optional(m.iou_mean, 4) << "\t" << fmt_optional(m.adm_mean, 1) << "\n";
  };
  out << report.key << "\tBA\tEDBC\tIoU\tADM\n";
  for (const auto& row : report.rows) line(row.name, row.metrics);
  if (report.total) line("TOTAL", *report.total);
}

// ---------------------------------------------------------------------------
// Config flags: one per RefineConfig field, overriding --config.

struct ConfigFlags {
  std::string config_path;
  std::optional<int> adjust_range_px;
  std::optional<int> adjust_range_deg;
  std::optional<double> threshold_text;
  std::optional<double> threshold_spine;
  std::optional<double> wide_range_rate;
  std::optional<double> shrink_x;
  std::optional<double> shrink_y;
  std::optional<double> nms_iou;
  std::optional<double> min_edge_px;
  std::optional<bool> enable_adjust_location;
  std::optional<bool> enable_adjust_angle;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_path, "JSON file with RefineConfig fields");
    app->add_option("--adjust-range-px", adjust_range_px, "location search range (+/- px)");
    app->add_option("--adjust-range-deg", adjust_range_deg, "angle search range (+/- deg)");
    app->add_option("--threshold-text", threshold_text, "text color gate (RGB distance)");
    app->add_option("--threshold-spine", threshold_spine, "spine color gate (RGB distance)");
    app->add_option("--wide-range-rate", wide_range_rate, "book range widening factor");
    app->add_option("--shrink-x", shrink_x, "scoring shrink across the spine");
    app->add_option("--shrink-y", shrink_y, "scoring shrink along the spine");
    app->add_option("--nms-iou", nms_iou, "NMS IoU threshold");
    app->add_option("--min-edge-px", min_edge_px, "size filter edge length");
    app->add_option("--enable-adjust-location", enable_adjust_location, "true/false");
    app->add_option("--enable-adjust-angle", enable_adjust_angle, "true/false");
  }

  RefineConfig resolve() const {
    RefineConfig cfg;
    if (!config_path.empty()) {
      std::string text;
      try {
        text = read_file(config_path);
      } catch (const Error& e) {
        throw ConfigError("--config", e.what());
      }
      cfg = apply_config_json(cfg, text);
    }
    if (adjust_range_px) cfg.adjust_range_px = *adjust_range_px;
    if (adjust_range_deg) cfg.adjust_range_deg = *adjust_range_deg;
    if (threshold_text) cfg.threshold_text = *threshold_text;
    if (threshold_spine) cfg.threshold_spine = *threshold_spine;
    if (wide_range_rate) cfg.wide_range_rate = *wide_range_rate;
    if (shrink_x) cfg.shrink_x = *shrink_x;
    if (shrink_y) cfg.shrink_y = *shrink_y;
    if (nms_iou) cfg.nms_iou = *nms_iou;
    if (min_edge_px) cfg.min_edge_px = *min_edge_px;
    if (enable_adjust_location) cfg.enable_adjust_location = *enable_adjust_location;
    if (enable_adjust_angle) cfg.enable_adjust_angle = *enable_adjust_angle;
    cfg.validate();
    return cfg;
  }
};

// Errors collected from workers, reported in input order.
class ErrorLog {
 public:
  explicit ErrorLog(std::size_t n) : messages_(n) {}
  void set(std::size_t i, std::string msg) { messages_[i] = std::move(msg); }
  bool report(std::ostream& err) const {
    bool any = false;
    for (const auto& m : messages_) {
      if (m.empty()) continue;
      err << "error: " << m << "\n";
      any = true;
    }
    return any;
  }

 private:
  std::vector<std::string> messages_;
};

// ---------------------------------------------------------------------------
// refine

struct RefineArgs {
  std::vector<std::string> images;
  std::string detections;
  std::string out;
  std::string gt;
  std::string replay;
  bool render = false;
  int jobs = 0;
  ConfigFlags config;
};

json manifest_json(const RefineConfig& cfg, const RefineArgs& a,
                   const std::vector<fs::path>& images,
                   const std::vector<double>& timings_ms) {
  json m;
  m["tool"] = "spinebox";
  m["version"] = SPINEBOX_VERSION;
  m["command"] = "refine";
  m["config"] = json::parse(config_to_json(cfg));
  json list = json::array();
  for (const auto& p : images) list.push_back(p.string());
  m["images"] = std::move(list);
  m["detections"] = a.detections;
  m["ground_truth"] = a.gt;
  m["render"] = a.render;
  json timings = json::object();
  for (std::size_t i = 0; i < images.size(); ++i) {
    timings[images[i].stem().string()] = timings_ms[i];
  }
  m["timings_ms"] = std::move(timings);
  return m;
}

int cmd_refine(RefineArgs a, std::ostream& out, std::ostream& err) {
  RefineConfig cfg;
  if (!a.replay.empty()) {
    json m;
    try {
      m = json::parse(read_file(a.replay));
    } catch (const json::exception& e) {
      throw ConfigError("--replay", e.what());
    }
    cfg = apply_config_json(RefineConfig{}, m.at("config").dump());
    a.images = m.at("images").get<std::vector<std::string>>();
    a.detections = m.at("detections").get<std::string>();
    a.gt = m.value("ground_truth", std::string());
    a.render = m.value("render", false);
    if (a.out.empty()) a.out = fs::path(a.replay).parent_path().string();
  } else {
    cfg = a.config.resolve();
    if (a.images.empty() || a.detections.empty() || a.out.empty()) {
      throw ConfigError("refine", "--images, --detections and --out are required");
    }
  }

  const auto images = collect_images(a.images);
  std::vector<fs::path> det_files;
  std::vector<std::string> missing;
  for (const auto& img : images) {
    const auto f = find_box_file(a.detections, img.stem().string(), ".boxes");
    if (f) {
      det_files.push_back(*f);
    } else {
      missing.push_back((fs::path(a.detections) / (img.stem().string() + ".boxes.txt")).string());
    }
  }
  if (!missing.empty()) {
    for (const auto& m : missing) err << "error: missing detections file " << m << "\n";
    return kExitInputError;
  }
  ensure_directory(a.out);

  std::vector<double> timings(images.size(), 0.0);
  ErrorLog errors(images.size());
  parallel_for(images.size(), a.jobs > 0 ? a.jobs : default_jobs(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const ImageBuffer img = load_image(images[i]);
      const DetectionFile dets = load_detections(det_files[i]);
      const auto boxes = refine_pipeline(img, dets.boxes, cfg);
      const std::string stem = images[i].stem().string();
      write_boxes(fs::path(a.out) / (stem + ".boxes.txt"), boxes);
      if (a.render) {
        std::vector<OrientedBox> truth;
        if (!a.gt.empty()) {
          if (const auto g = find_box_file(a.gt, stem, ".gt")) truth = load_ground_truth(*g).books;
        }
        render_annotated(img, boxes, truth, fs::path(a.out) / (stem + ".annotated.png"));
      }
    } catch (const std::exception& e) {
      errors.set(i, e.what());
    }
    timings[i] = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start).count();
  });
  if (errors.report(err)) return kExitInputError;

  write_file_atomic(fs::path(a.out) / kManifestName,
                    manifest_json(cfg, a, images, timings).dump(2) + "\n");
  out << "refined " << images.size() << " image(s) into " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string pred;
  std::string gt;
  std::string out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto pred_stems = box_file_stems(a.pred, ".boxes");
  const auto gt_stems = box_file_stems(a.gt, ".gt");

  std::vector<std::string> orphans;
  for (const auto& s : pred_stems) {
    if (!std::binary_search(gt_stems.begin(), gt_stems.end(), s)) orphans.push_back(s);
  }
  if (!orphans.empty()) {
    err << "error: no ground truth for prediction stem(s):";
    for (const auto& s : orphans) err << " " << s;
    err << "\n";
    return kExitInputError;
  }

  Report report;
  report.key = "image";
  std::vector<MetricsReport> per_image;
  for (const auto& stem : gt_stems) {
    GroundTruth truth = load_ground_truth(*find_box_file(a.gt, stem, ".gt"));
    truth.image_id = stem;
    for (const auto& w : truth_warnings(truth)) err << "warning: " << w << "\n";
    std::vector<OrientedBox> preds;
    if (const auto p = find_box_file(a.pred, stem, ".boxes")) preds = load_detections(*p).boxes;
    const MetricsReport m = evaluate(preds, truth);
    report.rows.push_back({stem, m});
    per_image.push_back(m);
  }
  if (per_image.empty()) {
    err << "error: no ground-truth files in " << a.gt << "\n";
    return kExitInputError;
  }
  report.total = aggregate(per_image);
  write_report_pair(report, report_prefix(a.out));
  print_table(report, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string spec;
  std::string out;
  int jobs = 0;
};

std::string format_labels(const std::vector<int>& labels) {
  std::string s;
  for (int l : labels) s += std::to_string(l) + "\n";
  return s;
}

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(a.spec);
  } catch (const Error& e) {
    throw ConfigError("--spec", e.what());
  }
  const ShelfSpec spec = parse_shelf_spec(text);
  ensure_directory(a.out);

  std::vector<std::string> overflow(static_cast<std::size_t>(spec.images));
  ErrorLog errors(overflow.size());
  parallel_for(overflow.size(), a.jobs > 0 ? a.jobs : default_jobs(), [&](std::size_t i) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "shelf_%04zu", i);
    try {
      SyntheticShelf shelf = generate(image_spec(spec, static_cast<int>(i)));
      const fs::path base = fs::path(a.out) / stem;
      save_png(shelf.image, fs::path(base.string() + ".png"));
      write_boxes(base.string() + ".boxes.txt", shelf.raw_boxes);
      write_boxes(base.string() + ".gt.txt", shelf.truth.books);
      write_file_atomic(base.string() + ".labels.txt", format_labels(shelf.fragment_book));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLayoutOverflow) overflow[i] = std::string(stem) + ": " + e.what();
      else errors.set(i, std::string(stem) + ": " + e.what());
    }
  });
  for (const auto& o : overflow) {
    if (!o.empty()) {
      err << "error: " << o << "\n";
      return kExitConfigError;
    }
  }
  if (errors.report(err)) return kExitInputError;
  write_file_atomic(fs::path(a.out) / "spec.json", text);
  out << "wrote " << spec.images << " synthetic image(s) to " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
  std::string image;
  std::string boxes;
  std::string gt;
  std::string out;
};

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream&) {
  const ImageBuffer img = load_image(a.image);
  const auto boxes = load_detections(a.boxes).boxes;
  std::vector<OrientedBox> truth;
  if (!a.gt.empty()) truth = load_ground_truth(a.gt).books;
  const fs::path dst(a.out);
  if (dst.has_parent_path()) ensure_directory(dst.parent_path());
  render_annotated(img, boxes, truth, dst);
  out << "wrote " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ablate

struct AblateArgs {
  std::string corpus;
  std::string out;
  int jobs = 0;
  ConfigFlags config;
};

std::array<RefineConfig, 3> ablation_configs(const RefineConfig& base) {
  RefineConfig grouping = base;
  grouping.enable_adjust_location = false;
  grouping.enable_adjust_angle = false;
  RefineConfig location = base;
  location.enable_adjust_location = true;
  location.enable_adjust_angle = false;
  RefineConfig both = base;
  both.enable_adjust_location = true;
  both.enable_adjust_angle = true;
  return {grouping, location, both};
}

int cmd_ablate(const AblateArgs& a, std::ostream& out, std::ostream& err) {
  const RefineConfig cfg = a.config.resolve();
  const auto images = collect_images({a.corpus});
  if (images.empty()) {
    err << "error: no images in " << a.corpus << "\n";
    return kExitInputError;
  }
  std::vector<std::string> missing;
  for (const auto& img : images) {
    const std::string stem = img.stem().string();
    if (!find_box_file(a.corpus, stem, ".boxes")) missing.push_back(stem + ".boxes.txt");
    if (!find_box_file(a.corpus, stem, ".gt")) missing.push_back(stem + ".gt.txt");
  }
  if (!missing.empty()) {
    for (const auto& m : missing) err << "error: missing " << m << " in " << a.corpus << "\n";
    return kExitInputError;
  }

  const auto variants = ablation_configs(cfg);
  // metrics[row][image]
  std::vector<std::vector<MetricsReport>> metrics(
      kAblationRows.size(), std::vector<MetricsReport>(images.size()));
  ErrorLog errors(images.size());
  parallel_for(images.size(), a.jobs > 0 ? a.jobs : default_jobs(), [&](std::size_t i) {
    try {
      const std::string stem = images[i].stem().string();
      const ImageBuffer img = load_image(images[i]);
      const auto raw = load_detections(*find_box_file(a.corpus, stem, ".boxes")).boxes;
      GroundTruth truth = load_ground_truth(*find_box_file(a.corpus, stem, ".gt"));
      metrics[0][i] = evaluate(naive_pipeline(raw, cfg), truth);
      for (std::size_t v = 0; v < variants.size(); ++v) {
        metrics[v + 1][i] = evaluate(refine_pipeline(img, raw, variants[v]), truth);
      }
    } catch (const std::exception& e) {
      errors.set(i, e.what());
    }
  });
  if (errors.report(err)) return kExitInputError;

  Report report;
  report.key = "config";
  for (std::size_t r = 0; r < kAblationRows.size(); ++r) {
    report.rows.push_back({kAblationRows[r], aggregate(metrics[r])});
  }
  write_report_pair(report, report_prefix(a.out));
  print_table(report, out);
  return kExitOk;
}

}  // namespace

int default_jobs() {
  if (const char* env = std::getenv("SPINEBOX_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refines scene-text detector boxes into one box per book spine."};
  app.set_version_flag("--version", std::string(SPINEBOX_VERSION));
  app.require_subcommand(1);

  RefineArgs refine;
  auto* refine_cmd = app.add_subcommand("refine", "Run the refinement pipeline over images");
  refine_cmd->add_option("--images", refine.images, "image files or directories");
  refine_cmd->add_option("--detections", refine.detections, "directory of <stem>.boxes.txt");
  refine_cmd->add_option("--out", refine.out, "output directory");
  refine_cmd->add_option("--gt", refine.gt, "ground-truth directory, overlaid when rendering");
  refine_cmd->add_flag("--render", refine.render, "also write <stem>.annotated.png");
  refine_cmd->add_option("--replay", refine.replay, "re-run from a manifest.json");
  refine_cmd->add_option("--jobs", refine.jobs, "worker threads (default $SPINEBOX_JOBS)");
  refine.config.add_to(refine_cmd);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "directory of <stem>.boxes.txt")->required();
  eval_cmd->add_option("--gt", eval.gt, "directory of <stem>.gt.txt")->required();
  eval_cmd->add_option("--out", eval.out, "report path prefix (.json and .csv)")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic shelf corpus");
  synth_cmd->add_option("--spec", synth.spec, "ShelfSpec JSON")->required();
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--jobs", synth.jobs, "worker threads");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Draw boxes over an image");
  render_cmd->add_option("--image", render.image, "input image")->required();
  render_cmd->add_option("--boxes", render.boxes, "boxes file")->required();
  render_cmd->add_option("--gt", render.gt, "ground-truth boxes file (dashed)");
  render_cmd->add_option("--out", render.out, "output PNG")->required();

  AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "Compare naive, grouping and adjusting");
  ablate_cmd->add_option("--corpus", ablate.corpus, "directory with images, .boxes.txt, .gt.txt")
      ->required();
  ablate_cmd->add_option("--out", ablate.out, "report path prefix (.json and .csv)")->required();
  ablate_cmd->add_option("--jobs", ablate.jobs, "worker threads (default $SPINEBOX_JOBS)");
  ablate.config.add_to(ablate_cmd);

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  if (storage.empty()) storage.emplace_back("spinebox");
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*refine_cmd) return cmd_refine(refine, out, err);
    if (*eval_cmd) return cmd_eval(eval, out, err);
    if (*synth_cmd) return cmd_synth(synth, out, err);
    if (*render_cmd) return cmd_render(render, out, err);
    if (*ablate_cmd) return cmd_ablate(ablate, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitConfigError;
}

}  // namespace spinebox::cli
