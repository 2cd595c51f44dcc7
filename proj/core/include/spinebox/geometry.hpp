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

#include <array>
#include <span>
#include <vector>

namespace spinebox {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p);

// Vertices in order; convex polygons produced by this module are wound so
// that polygon_area() is non-negative.
using Polygon = std::vector<Point>;

// Maps any angle in degrees into (0, 180].
double normalize_angle(double degrees);

// A rotated rectangle in image coordinates (x right, y down).
//
// The angle is in degrees, counter-clockwise as seen on screen, from the +x
// axis to the box's height axis, normalized into (0, 180]. A vertical book
// spine therefore has angle 90 and its height runs along the spine.
class OrientedBox {
 public:
  // Throws Error(kInvalidBox) for non-finite values or non-positive sizes.
  OrientedBox(double cx, double cy, double width, double height,
              double angle_deg);

  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double width() const { return width_; }
  double height() const { return height_; }
  double angle() const { return angle_; }
  Point center() const { return {cx_, cy_}; }
  double area() const { return width_ * height_; }

  // Unit vector along the height axis, pointing "up" the box on screen.
  Point height_axis() const;
  // Unit vector along the width axis; at angle 90 this is +x.
  Point width_axis() const;

  OrientedBox translated(double dx, double dy) const;
  OrientedBox rotated(double delta_deg) const;
  OrientedBox resized(double width, double height) const;

  friend bool operator==(const OrientedBox&, const OrientedBox&) = default;

 private:
  double cx_;
  double cy_;
  double width_;
  double height_;
  double angle_;
};

// Four vertices, counter-clockwise in the (x, y) frame (positive shoelace
// area). The first edge runs along the height axis.
std::array<Point, 4> corner_points(const OrientedBox& box);
Polygon corners(const OrientedBox& box);

// Inverse of corner_points for an exact rectangle in that vertex order.
OrientedBox box_from_corners(std::span<const Point, 4> pts);

double polygon_area(std::span<const Point> poly);

// Area of the intersection of two convex polygons (Sutherland-Hodgman).
// Degenerate inputs yield 0.
double intersection_area(std::span<const Point> a, std::span<const Point> b);
double intersection_area(const OrientedBox& a, const OrientedBox& b);

double iou(const OrientedBox& b, const OrientedBox& g);

// Inclusive point-in-box test with a small absolute tolerance.
bool contains(const OrientedBox& box, Point p, double tol = 1e-9);

// Inferred extent of a whole book derived from its topmost detected box.
struct BookRange {
  double cx = 0.0;
  double cy = 0.0;
  double width = 0.0;
  double height = 0.0;
  double angle = 0.0;

  // Intermediate quantities of the construction, kept for inspection:
  // horizontal extent of the top box, rise from the box center to the start
  // of the range, vertical and horizontal run of the range axis.
  double box_w = 0.0;
  double rise = 0.0;
  double line_h = 0.0;
  double line_w = 0.0;

  OrientedBox as_box() const { return {cx, cy, width, height, angle}; }
  BookRange widened(double rate) const;
};

// The range starts on the top box's center line, half the box's horizontal
// extent to the side (clamped to the image top), and runs along that line to
// the bottom of the image. Angles above 90 use the mirrored construction.
//
// Throws Error(kDegenerateAngle) when the angle is within 1e-6 of 0 or 180,
// Error(kInvalidArgument) when image_height <= 0.
BookRange book_range(const OrientedBox& top_box, double image_height);

// Fraction of inner's area that lies inside outer.
double contained_fraction(const OrientedBox& inner, const OrientedBox& outer);
double contained_fraction(const OrientedBox& inner, const BookRange& outer);

// Andrew's monotone chain; counter-clockwise, no collinear points.
Polygon convex_hull(std::span<const Point> points);

// Minimum-area rectangle around the points (rotating calipers over the
// hull). Of the two axes of that rectangle, the one closer in direction to
// reference_axis becomes the height axis.
OrientedBox min_area_rect(std::span<const Point> points, Point reference_axis);

// Minimum-area oriented rectangle containing every corner of every box. The
// first box's height axis decides which side is the height.
// Throws Error(kEmptyGroup) on an empty span.
OrientedBox enclosing_box(std::span<const OrientedBox> boxes);

}  // namespace spinebox
