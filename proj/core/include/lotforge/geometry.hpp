#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace lotforge {

/// Plan coordinates in meters: x grows east, y grows north.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return length(a - b); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

constexpr double kPi = 3.14159265358979323846;
inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Counter-clockwise rotation about the origin.
Vec2 rotate_ccw(Vec2 v, double degrees);

/// Unit vector pointing along a compass bearing (0 = north, clockwise).
Vec2 bearing_vector(double bearing_deg);

/// Simple polygon, vertices in order without the closing repeat.
using Polygon = std::vector<Vec2>;

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

double signed_area(const Polygon& poly);
double area(const Polygon& poly);
Vec2 centroid(const Polygon& poly);

/// Even-odd point containment; boundary points count as inside for convex input.
bool contains(const Polygon& poly, Vec2 p);

/// Regular n-gon with a vertex at bearing-free angle 0 (pointing east).
/// With equal_area the circumradius is stretched so the polygon area equals
/// pi * radius^2.
Polygon regular_polygon(Vec2 center, double radius, int sides, bool equal_area);

/// Sutherland-Hodgman clip of a convex or simple polygon against a rectangle.
/// Returns an empty polygon when nothing remains.
Polygon clip_to_rect(const Polygon& poly, const Rect& rect);

/// Area of the union of polygons. Each input must be simple; orientation is
/// corrected internally.
double union_area(std::span<const Polygon> polygons);

}  // namespace lotforge
