#pragma once

// Exact planar primitives used by the torus arrangement.

#include <optional>
#include <variant>
#include <vector>

#include "multitile/linalg.hpp"
#include "multitile/polytope.hpp"

namespace multitile {

struct Point2 {
  Scalar x;
  Scalar y;

  Vec as_vec() const { return {x, y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

bool lex_less(const Point2& a, const Point2& b);
Point2 midpoint(const Point2& a, const Point2& b);

// Closed segment; endpoints stored lexicographically ordered.
struct Segment2 {
  Point2 a;
  Point2 b;

  static Segment2 make(Point2 p, Point2 q);
  bool is_vertical() const { return a.x == b.x; }
  friend bool operator==(const Segment2&, const Segment2&) = default;
};

// sign of (b - a) x (c - a)
int orientation(const Point2& a, const Point2& b, const Point2& c);
bool on_segment(const Segment2& s, const Point2& p);

struct NoIntersection {};
using SegmentIntersection = std::variant<NoIntersection, Point2, Segment2>;
SegmentIntersection intersect(const Segment2& s, const Segment2& t);

// Portion of s inside the closed box [lo, hi]; nullopt if empty or a point.
std::optional<Segment2> clip_to_box(const Segment2& s, const Point2& lo, const Point2& hi);

// y of the (non-vertical) segment's supporting line at x.
Scalar y_at(const Segment2& s, const Scalar& x);

// Counter-clockwise vertex cycle of a 2D polytope.
std::vector<Point2> polygon_vertices(const Polytope& p);

// Boundary edges of a 2D polytope.
std::vector<Segment2> polygon_edges(const Polytope& p);

Point2 apply(const Matrix<Scalar>& m, const Point2& p);

}  // namespace multitile
