#include "lotforge/geometry.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

#include <algorithm>

namespace lotforge {

namespace bg = boost::geometry;

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*clockwise=*/false, /*closed=*/true>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_boost(const Polygon& poly) {
  BgPolygon out;
  auto& ring = out.outer();
  ring.reserve(poly.size() + 1);
  for (const Vec2& v : poly) ring.emplace_back(v.x, v.y);
  ring.emplace_back(poly.front().x, poly.front().y);
  bg::correct(out);
  return out;
}

}  // namespace

Vec2 rotate_ccw(Vec2 v, double degrees) {
  const double r = deg_to_rad(degrees);
  const double c = std::cos(r);
  const double s = std::sin(r);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

Vec2 bearing_vector(double bearing_deg) {
  const double r = deg_to_rad(bearing_deg);
  return {std::sin(r), std::cos(r)};
}

double signed_area(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * acc;
}

double area(const Polygon& poly) { return std::abs(signed_area(poly)); }

Vec2 centroid(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n == 0) return {};
  const double a = signed_area(poly);
  if (std::abs(a) < 1e-12) {
    Vec2 sum;
    for (const Vec2& v : poly) sum = sum + v;
    return sum * (1.0 / static_cast<double>(n));
  }
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double w = cross(p, q);
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

bool contains(const Polygon& poly, Vec2 p) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  // Convex fast path: inside iff p is on the inner side of every edge.
  bool left_turn = false;
  bool right_turn = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const Vec2 c = poly[(i + 2) % n];
    const double turn = cross(b - a, c - b);
    if (turn > 1e-12) left_turn = true;
    if (turn < -1e-12) right_turn = true;
  }
  const bool convex_ok = !(left_turn && right_turn);
  if (convex_ok) {
    const double sign = signed_area(poly) >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % n];
      if (sign * cross(b - a, p - a) < -1e-12) return false;
    }
    return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

Polygon regular_polygon(Vec2 center, double radius, int sides, bool equal_area) {
  Polygon out;
  if (sides < 3 || radius <= 0.0) return out;
  double r = radius;
  if (equal_area) {
    const double n = static_cast<double>(sides);
    r = radius * std::sqrt(2.0 * kPi / (n * std::sin(2.0 * kPi / n)));
  }
  out.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double t = 2.0 * kPi * k / sides;
    out.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
  }
  return out;
}

namespace {

template <typename Inside, typename Intersect>
Polygon clip_edge(const Polygon& in, Inside inside, Intersect intersect) {
  Polygon out;
  const std::size_t n = in.size();
  if (n == 0) return out;
  out.reserve(n + 4);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = in[i];
    const Vec2 prev = in[(i + n - 1) % n];
    const bool cur_in = inside(cur);
    const bool prev_in = inside(prev);
    if (cur_in) {
      if (!prev_in) out.push_back(intersect(prev, cur));
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(intersect(prev, cur));
    }
  }
  return out;
}

Vec2 lerp_x(Vec2 a, Vec2 b, double x) {
  const double t = (x - a.x) / (b.x - a.x);
  return {x, a.y + t * (b.y - a.y)};
}

Vec2 lerp_y(Vec2 a, Vec2 b, double y) {
  const double t = (y - a.y) / (b.y - a.y);
  return {a.x + t * (b.x - a.x), y};
}

}  // namespace

Polygon clip_to_rect(const Polygon& poly, const Rect& rect) {
  Polygon out = poly;
  out = clip_edge(out, [&](Vec2 p) { return p.x >= rect.min_x; },
                  [&](Vec2 a, Vec2 b) { return lerp_x(a, b, rect.min_x); });
  out = clip_edge(out, [&](Vec2 p) { return p.x <= rect.max_x; },
                  [&](Vec2 a, Vec2 b) { return lerp_x(a, b, rect.max_x); });
  out = clip_edge(out, [&](Vec2 p) { return p.y >= rect.min_y; },
                  [&](Vec2 a, Vec2 b) { return lerp_y(a, b, rect.min_y); });
  out = clip_edge(out, [&](Vec2 p) { return p.y <= rect.max_y; },
                  [&](Vec2 a, Vec2 b) { return lerp_y(a, b, rect.max_y); });
  Polygon deduped;
  deduped.reserve(out.size());
  for (const Vec2& v : out) {
    if (deduped.empty() || distance(deduped.back(), v) > 1e-12) deduped.push_back(v);
  }
  while (deduped.size() > 1 && distance(deduped.front(), deduped.back()) <= 1e-12) {
    deduped.pop_back();
  }
  if (deduped.size() < 3 || area(deduped) < 1e-12) return {};
  return deduped;
}

double union_area(std::span<const Polygon> polygons) {
  BgMulti acc;
  for (const Polygon& poly : polygons) {
    if (poly.size() < 3 || area(poly) < 1e-12) continue;
    BgMulti next;
    bg::union_(acc, to_boost(poly), next);
    acc = std::move(next);
  }
  return bg::area(acc);
}

}  // namespace lotforge
