#include "dimac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimac/errors.hpp"

namespace dimac::geom {

namespace {

bool lower_left(Point a, Point b) { return a.y < b.y || (a.y == b.y && a.x < b.x); }

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2, 0.0, 1.0);
  const Point q = a + t * ab;
  return std::hypot(p.x - q.x, p.y - q.y);
}

}  // namespace

ConvexPolygon ConvexPolygon::from_hull(std::vector<Point> ccw_vertices) {
  ConvexPolygon p;
  p.v_ = std::move(ccw_vertices);
  return p;
}

double ConvexPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Point& p = v_[i];
    const Point& q = v_[(i + 1) % v_.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

ConvexPolygon convex_hull(std::span<const Point> points) {
  std::vector<Point> p(points.begin(), points.end());
  for (const Point& q : p) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw InputError("non-finite point in hull");
  }
  std::sort(p.begin(), p.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() <= 2) return ConvexPolygon::from_hull(p);
  std::vector<Point> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return ConvexPolygon::from_hull(std::move(h));
}

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  auto rotated = [](const std::vector<Point>& v) {
    const auto start = std::min_element(v.begin(), v.end(), lower_left) - v.begin();
    std::vector<Point> r;
    for (std::size_t i = 0; i < v.size(); ++i) r.push_back(v[(start + i) % v.size()]);
    return r;
  };
  const std::vector<Point> p = rotated(a.vertices());
  const std::vector<Point> q = rotated(b.vertices());
  auto edge = [](const std::vector<Point>& v, std::size_t i) {
    return v[(i + 1) % v.size()] - v[i % v.size()];
  };
  const std::size_t ep = p.size() > 1 ? p.size() : 0;
  const std::size_t eq = q.size() > 1 ? q.size() : 0;
  std::vector<Point> out;
  out.reserve(ep + eq);
  std::size_t i = 0, j = 0;
  while (i < ep || j < eq) {
    out.push_back(p[i % p.size()] + q[j % q.size()]);
    if (i == ep) {
      ++j;
    } else if (j == eq) {
      ++i;
    } else {
      const Point u = edge(p, i);
      const Point w = edge(q, j);
      const double c = u.x * w.y - u.y * w.x;
      if (c >= 0.0) ++i;
      if (c <= 0.0) ++j;
    }
  }
  if (out.empty()) out.push_back(p[0] + q[0]);
  return convex_hull(out);
}

ConvexPolygon scale(const ConvexPolygon& a, double c) {
  if (c < 0.0) throw InputError("scale factor must be nonnegative");
  std::vector<Point> v;
  for (const Point& p : a.vertices()) v.push_back(c * p);
  return c == 0.0 ? convex_hull(v) : ConvexPolygon::from_hull(std::move(v));
}

double distance(Point p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  if (v.empty()) throw InputError("distance to an empty polygon");
  if (v.size() == 1) return std::hypot(p.x - v[0].x, p.y - v[0].y);
  if (v.size() == 2) return segment_distance(p, v[0], v[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    if (cross(a, b, p) < 0.0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) throw InputError("Hausdorff distance of an empty set");
  double worst = 0.0;
  for (const Point& p : a.vertices()) worst = std::max(worst, distance(p, b));
  return worst;
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace dimac::geom
