#pragma once

#include <span>
#include <vector>

namespace dimac::geom {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double c, Point a) { return {c * a.x, c * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Counterclockwise convex polygon with no repeated or collinear vertices.
/// Degenerate polygons (a point or a segment) have 1 or 2 vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  /// Trusts that `ccw_vertices` already satisfy the invariant.
  static ConvexPolygon from_hull(std::vector<Point> ccw_vertices);

  const std::vector<Point>& vertices() const noexcept { return v_; }
  bool empty() const noexcept { return v_.empty(); }
  std::size_t size() const noexcept { return v_.size(); }
  double area() const;

 private:
  std::vector<Point> v_;
};

/// Monotone-chain hull; collinear and duplicate points are dropped.
ConvexPolygon convex_hull(std::span<const Point> points);

/// Linear-time Minkowski sum by merging edge sequences.
ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b);

ConvexPolygon scale(const ConvexPolygon& a, double c);

/// Euclidean distance from p to the polygon (0 inside).
double distance(Point p, const ConvexPolygon& poly);

/// sup_{a in A} d(a, B).
double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);

/// max of the two directed distances. Throws InputError on empty input.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace dimac::geom
