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

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spinebox/error.hpp"
#include "spinebox/io.hpp"

namespace spinebox {

namespace {

using nlohmann::json;

constexpr std::string_view kTotalRow = "TOTAL";

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json metrics_json(const MetricsReport& m) {
  return {{"BA", m.ba},
          {"EDBC", optional_json(m.edbc_mean)},
          {"IoU", optional_json(m.iou_mean)},
          {"ADM", optional_json(m.adm_mean)},
          {"matched_books", m.matched_books},
          {"total_books", m.total_books},
          {"false_boxes", m.false_boxes}};
}

std::optional<double> optional_from(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

MetricsReport metrics_from(const json& j) {
  MetricsReport m;
  m.ba = j.at("BA").get<double>();
  m.edbc_mean = optional_from(j.at("EDBC"));
  m.iou_mean = optional_from(j.at("IoU"));
  m.adm_mean = optional_from(j.at("ADM"));
  m.matched_books = j.at("matched_books").get<std::size_t>();
  m.total_books = j.at("total_books").get<std::size_t>();
  m.false_boxes = j.at("false_boxes").get<std::size_t>();
  return m;
}

std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string optional_number(const std::optional<double>& v) {
  return v ? number(*v) : std::string();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::string& name, const MetricsReport& m) {
  return csv_escape(name) + "," + number(m.ba) + "," + optional_number(m.edbc_mean) +
         "," + optional_number(m.iou_mean) + "," + optional_number(m.adm_mean) + "," +
         std::to_string(m.matched_books) + "," + std::to_string(m.total_books) + "," +
         std::to_string(m.false_boxes) + "\n";
}

std::vector<std::string> csv_split(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("<report>", line_no, "unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

double csv_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("<report>", line_no, "bad number '" + s + "'");
  }
  return v;
}

std::optional<double> csv_optional(const std::string& s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return csv_double(s, line_no);
}

std::size_t csv_count(const std::string& s, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("<report>", line_no, "bad count '" + s + "'");
  }
  return v;
}

Report parse_csv(std::string_view text) {
  Report r;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = csv_split(line, line_no);
    if (line_no == 1) {
      const std::string expected = "," + std::string(kCsvColumns);
      const auto comma = line.find(',');
      if (comma == std::string::npos || line.substr(comma) != expected) {
        throw ParseError("<report>", line_no, "unexpected header");
      }
      r.key = fields[0];
      continue;
    }
    if (fields.size() != 8) throw ParseError("<report>", line_no, "expected 8 fields");
    MetricsReport m;
    m.ba = csv_double(fields[1], line_no);
    m.edbc_mean = csv_optional(fields[2], line_no);
    m.iou_mean = csv_optional(fields[3], line_no);
    m.adm_mean = csv_optional(fields[4], line_no);
    m.matched_books = csv_count(fields[5], line_no);
    m.total_books = csv_count(fields[6], line_no);
    m.false_boxes = csv_count(fields[7], line_no);
    if (fields[0] == kTotalRow) {
      r.total = m;
    } else {
      r.rows.push_back({fields[0], m});
    }
  }
  if (line_no == 0) throw ParseError("<report>", 1, "empty report");
  return r;
}

}  // namespace

std::string format_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json rows = json::array();
    for (const auto& row : report.rows) {
      json j = metrics_json(row.metrics);
      j["name"] = row.name;
      rows.push_back(std::move(j));
    }
    const json doc = {{"key", report.key},
                      {"rows", std::move(rows)},
                      {"total", report.total ? metrics_json(*report.total) : json(nullptr)}};
    return doc.dump(2) + "\n";
  }
  std::string out = csv_escape(report.key) + "," + std::string(kCsvColumns) + "\n";
  for (const auto& row : report.rows) out += csv_row(row.name, row.metrics);
  if (report.total) out += csv_row(std::string(kTotalRow), *report.total);
  return out;
}

Report parse_report(std::string_view text, ReportFormat format) {
  if (format == ReportFormat::kCsv) return parse_csv(text);
  try {
    const json doc = json::parse(text);
    Report r;
    r.key = doc.at("key").get<std::string>();
    for (const auto& row : doc.at("rows")) {
      r.rows.push_back({row.at("name").get<std::string>(), metrics_from(row)});
    }
    if (!doc.at("total").is_null()) r.total = metrics_from(doc.at("total"));
    return r;
  } catch (const json::exception& e) {
    throw ParseError("<report>", 1, e.what());
  }
}

void write_report(const Report& report, const std::filesystem::path& path,
                  ReportFormat format) {
  write_file_atomic(path, format_report(report, format));
}

Report read_report(const std::filesystem::path& path, ReportFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str(), format);
}

}  // namespace spinebox
