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

#include "spinebox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinebox/error.hpp"

namespace spinebox {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kDegenerateAngleTol = 1e-6;

double angle_of_axis(Point axis) {
  // Screen-CCW angle: y grows downward, so flip it.
  return normalize_angle(std::atan2(-axis.y, axis.x) / kDegToRad);
}

Point unit(Point p) {
  const double n = norm(p);
  return {p.x / n, p.y / n};
}

// Keeps the part of `subject` on the left of the directed edge a->b.
Polygon clip_against_edge(const Polygon& subject, Point a, Point b) {
  Polygon out;
  const std::size_t n = subject.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  const Point edge = b - a;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = subject[i];
    const Point& prev = subject[(i + n - 1) % n];
    const double d_cur = cross(edge, cur - a);
    const double d_prev = cross(edge, prev - a);
    if (d_cur >= 0.0) {
      if (d_prev < 0.0) {
        const double t = d_prev / (d_prev - d_cur);
        out.push_back(prev + (cur - prev) * t);
      }
      out.push_back(cur);
    } else if (d_prev >= 0.0) {
      const double t = d_prev / (d_prev - d_cur);
      out.push_back(prev + (cur - prev) * t);
    }
  }
  return out;
}

Polygon ccw_copy(std::span<const Point> poly) {
  Polygon p(poly.begin(), poly.end());
  if (polygon_area(p) < 0.0) std::reverse(p.begin(), p.end());
  return p;
}

double signed_area(std::span<const Point> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

}  // namespace

double norm(Point p) { return std::hypot(p.x, p.y); }

double normalize_angle(double degrees) {
  double a = std::fmod(degrees, 180.0);
  if (a <= 0.0) a += 180.0;
  return a;
}

OrientedBox::OrientedBox(double cx, double cy, double width, double height,
                         double angle_deg)
    : cx_(cx), cy_(cy), width_(width), height_(height), angle_(0.0) {
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(width) ||
      !std::isfinite(height) || !std::isfinite(angle_deg)) {
    throw Error(ErrorCode::kInvalidBox, "box has non-finite field");
  }
  if (width <= 0.0 || height <= 0.0) {
    throw Error(ErrorCode::kInvalidBox,
                "box size must be positive, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  angle_ = normalize_angle(angle_deg);
}

Point OrientedBox::height_axis() const {
  const double t = angle_ * kDegToRad;
  return {std::cos(t), -std::sin(t)};
}

Point OrientedBox::width_axis() const {
  const double t = angle_ * kDegToRad;
  return {std::sin(t), std::cos(t)};
}

OrientedBox OrientedBox::translated(double dx, double dy) const {
  return {cx_ + dx, cy_ + dy, width_, height_, angle_};
}

OrientedBox OrientedBox::rotated(double delta_deg) const {
  return {cx_, cy_, width_, height_, angle_ + delta_deg};
}

OrientedBox OrientedBox::resized(double width, double height) const {
  return {cx_, cy_, width, height, angle_};
}

std::array<Point, 4> corner_points(const OrientedBox& box) {
  const Point c = box.center();
  const Point u = box.height_axis() * (0.5 * box.height());
  const Point v = box.width_axis() * (0.5 * box.width());
  return {c - v - u, c - v + u, c + v + u, c + v - u};
}

Polygon corners(const OrientedBox& box) {
  const auto pts = corner_points(box);
  return Polygon(pts.begin(), pts.end());
}

OrientedBox box_from_corners(std::span<const Point, 4> pts) {
  const Point c = (pts[0] + pts[1] + pts[2] + pts[3]) * 0.25;
  const Point along_height = pts[1] - pts[0];
  const Point along_width = pts[3] - pts[0];
  return {c.x, c.y, norm(along_width), norm(along_height),
          angle_of_axis(along_height)};
}

double polygon_area(std::span<const Point> poly) { return signed_area(poly); }

double intersection_area(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() < 3 || b.size() < 3) return 0.0;
  const Polygon clip = ccw_copy(b);
  Polygon subject = ccw_copy(a);
  const double area_a = polygon_area(subject);
  const double area_b = polygon_area(clip);
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;

  const std::size_t m = clip.size();
  for (std::size_t i = 0; i < m && !subject.empty(); ++i) {
    subject = clip_against_edge(subject, clip[i], clip[(i + 1) % m]);
  }
  if (subject.size() < 3) return 0.0;
  const double inter = polygon_area(subject);
  return std::clamp(inter, 0.0, std::min(area_a, area_b));
}

double intersection_area(const OrientedBox& a, const OrientedBox& b) {
  // Cheap reject on the circumscribed circles.
  const double ra = 0.5 * std::hypot(a.width(), a.height());
  const double rb = 0.5 * std::hypot(b.width(), b.height());
  if (norm(a.center() - b.center()) > ra + rb) return 0.0;
  const auto pa = corner_points(a);
  const auto pb = corner_points(b);
  return intersection_area(std::span<const Point>(pa), std::span<const Point>(pb));
}

double iou(const OrientedBox& b, const OrientedBox& g) {
  const double inter = intersection_area(b, g);
  const double uni = b.area() + g.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

bool contains(const OrientedBox& box, Point p, double tol) {
  const Point d = p - box.center();
  return std::abs(dot(d, box.width_axis())) <= 0.5 * box.width() + tol &&
         std::abs(dot(d, box.height_axis())) <= 0.5 * box.height() + tol;
}

BookRange BookRange::widened(double rate) const {
  BookRange r = *this;
  r.width *= rate;
  return r;
}

BookRange book_range(const OrientedBox& top_box, double image_height) {
  const double angle = top_box.angle();
  if (angle < kDegenerateAngleTol || angle > 180.0 - kDegenerateAngleTol) {
    throw Error(ErrorCode::kDegenerateAngle,
                "book range undefined for angle " + std::to_string(angle));
  }
  if (!(image_height > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "image height must be positive");
  }
  const double t = angle * kDegToRad;
  const double s = std::sin(t);
  const double c = std::abs(std::cos(t));
  const Point up = top_box.height_axis();

  BookRange r;
  r.angle = angle;
  r.width = top_box.width();
  r.box_w = top_box.height() * c + top_box.width() * s;

  // Distance along the axis from the box center to where the range starts:
  // half the horizontal extent sideways, but never above the image top.
  const double to_side =
      c > 0.0 ? 0.5 * r.box_w / c : std::numeric_limits<double>::infinity();
  const double to_top = top_box.cy() / s;
  const double up_len = std::min(to_side, to_top);

  const double bottom = std::max(image_height, top_box.cy());
  const double down_len = (bottom - top_box.cy()) / s;

  const Point start = top_box.center() + up * up_len;
  const Point end = top_box.center() - up * down_len;
  r.cx = 0.5 * (start.x + end.x);
  r.cy = 0.5 * (start.y + end.y);
  r.height = up_len + down_len;
  r.rise = up_len * s;
  r.line_h = r.rise + (bottom - top_box.cy());
  r.line_w = r.line_h * c / s;
  return r;
}

double contained_fraction(const OrientedBox& inner, const OrientedBox& outer) {
  const double area = inner.area();
  if (!(area > 0.0)) {
    throw Error(ErrorCode::kInvalidBox, "inner box has zero area");
  }
  return std::clamp(intersection_area(inner, outer) / area, 0.0, 1.0);
}

double contained_fraction(const OrientedBox& inner, const BookRange& outer) {
  return contained_fraction(inner, outer.as_box());
}

Polygon convex_hull(std::span<const Point> points) {
  Polygon pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

OrientedBox min_area_rect(std::span<const Point> points, Point reference_axis) {
  const Polygon hull = convex_hull(points);
  if (hull.size() < 3 || polygon_area(hull) <= 0.0) {
    throw Error(ErrorCode::kInvalidBox, "points do not span an area");
  }

  double best_area = std::numeric_limits<double>::infinity();
  Point best_e, best_n, best_center;
  double best_le = 0.0, best_ln = 0.0;
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = unit(hull[(i + 1) % n] - hull[i]);
    const Point nrm{-e.y, e.x};
    double min_e = std::numeric_limits<double>::infinity(), max_e = -min_e;
    double min_n = min_e, max_n = -min_e;
    for (const Point& p : hull) {
      const double pe = dot(p, e), pn = dot(p, nrm);
      min_e = std::min(min_e, pe);
      max_e = std::max(max_e, pe);
      min_n = std::min(min_n, pn);
      max_n = std::max(max_n, pn);
    }
    const double area = (max_e - min_e) * (max_n - min_n);
    if (area < best_area * (1.0 - 1e-12)) {
      best_area = area;
      best_e = e;
      best_n = nrm;
      best_le = max_e - min_e;
      best_ln = max_n - min_n;
      best_center = e * (0.5 * (min_e + max_e)) + nrm * (0.5 * (min_n + max_n));
    }
  }

  const bool e_is_height =
      std::abs(dot(best_e, reference_axis)) >= std::abs(dot(best_n, reference_axis));
  const Point height_axis = e_is_height ? best_e : best_n;
  const double height = e_is_height ? best_le : best_ln;
  const double width = e_is_height ? best_ln : best_le;
  return {best_center.x, best_center.y, width, height, angle_of_axis(height_axis)};
}

OrientedBox enclosing_box(std::span<const OrientedBox> boxes) {
  if (boxes.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "cannot enclose an empty group");
  }
  std::vector<Point> pts;
  pts.reserve(4 * boxes.size());
  for (const auto& b : boxes) {
    const auto c = corner_points(b);
    pts.insert(pts.end(), c.begin(), c.end());
  }
  return min_area_rect(pts, boxes.front().height_axis());
}

}  // namespace spinebox
