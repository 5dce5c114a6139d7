#include "multitile/geometry2d.hpp"

#include <algorithm>

namespace multitile {

namespace {

Scalar cross(const Scalar& ax, const Scalar& ay, const Scalar& bx, const Scalar& by) {
  return ax * by - ay * bx;
}

}  // namespace

bool lex_less(const Point2& a, const Point2& b) {
  int c = compare(a.x, b.x);
  if (c != 0) return c < 0;
  return compare(a.y, b.y) < 0;
}

Point2 midpoint(const Point2& a, const Point2& b) {
  const Scalar half(Rational(1, 2));
  return {(a.x + b.x) * half, (a.y + b.y) * half};
}

Segment2 Segment2::make(Point2 p, Point2 q) {
  if (lex_less(q, p)) std::swap(p, q);
  return {std::move(p), std::move(q)};
}

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  return cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y).sign();
}

bool on_segment(const Segment2& s, const Point2& p) {
  if (orientation(s.a, s.b, p) != 0) return false;
  return !lex_less(p, s.a) && !lex_less(s.b, p);
}

SegmentIntersection intersect(const Segment2& s, const Segment2& t) {
  int o1 = orientation(s.a, s.b, t.a);
  int o2 = orientation(s.a, s.b, t.b);
  if (o1 == 0 && o2 == 0) {
    const Point2& start = lex_less(s.a, t.a) ? t.a : s.a;
    const Point2& end = lex_less(s.b, t.b) ? s.b : t.b;
    if (lex_less(start, end)) return Segment2{start, end};
    if (start == end) return start;
    return NoIntersection{};
  }
  if (o1 * o2 > 0) return NoIntersection{};
  int o3 = orientation(t.a, t.b, s.a);
  int o4 = orientation(t.a, t.b, s.b);
  if (o3 * o4 > 0) return NoIntersection{};
  if (o1 == 0) return t.a;
  if (o2 == 0) return t.b;
  if (o3 == 0) return s.a;
  if (o4 == 0) return s.b;
  Scalar dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Scalar ex = t.b.x - t.a.x, ey = t.b.y - t.a.y;
  Scalar u = cross(t.a.x - s.a.x, t.a.y - s.a.y, ex, ey) / cross(dx, dy, ex, ey);
  return Point2{s.a.x + u * dx, s.a.y + u * dy};
}

std::optional<Segment2> clip_to_box(const Segment2& s, const Point2& lo, const Point2& hi) {
  Scalar dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Scalar u0(0), u1(1);
  const Scalar ps[4] = {-dx, dx, -dy, dy};
  const Scalar qs[4] = {s.a.x - lo.x, hi.x - s.a.x, s.a.y - lo.y, hi.y - s.a.y};
  for (int k = 0; k < 4; ++k) {
    int sp = ps[k].sign();
    if (sp == 0) {
      if (qs[k].sign() < 0) return std::nullopt;
      continue;
    }
    Scalar r = qs[k] / ps[k];
    if (sp < 0) {
      if (r > u0) u0 = r;
    } else {
      if (r < u1) u1 = r;
    }
  }
  if (u0 >= u1) return std::nullopt;
  Point2 p{s.a.x + u0 * dx, s.a.y + u0 * dy};
  Point2 q{s.a.x + u1 * dx, s.a.y + u1 * dy};
  return Segment2::make(std::move(p), std::move(q));
}

Scalar y_at(const Segment2& s, const Scalar& x) {
  if (s.is_vertical()) throw InvalidInput("y_at on a vertical segment");
  return s.a.y + (s.b.y - s.a.y) * (x - s.a.x) / (s.b.x - s.a.x);
}

std::vector<Point2> polygon_vertices(const Polytope& p) {
  if (p.dimension() != 2) throw DimensionUnsupported("polygon operations need d = 2");
  if (p.vertices()) {
    std::vector<Point2> out;
    for (const Vec& v : *p.vertices()) out.push_back({v[0], v[1]});
    return out;
  }
  const auto& facets = p.facets();
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      Matrix<Scalar> m(2, 2);
      m(0, 0) = facets[i].normal[0];
      m(0, 1) = facets[i].normal[1];
      m(1, 0) = facets[j].normal[0];
      m(1, 1) = facets[j].normal[1];
      auto x = solve(m, std::vector<Scalar>{facets[i].offset, facets[j].offset});
      if (!x || !p.contains_closed(*x)) continue;
      Point2 q{(*x)[0], (*x)[1]};
      if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(std::move(q));
    }
  }
  const Vec& c = p.interior_point();
  auto half = [&](const Point2& q) {
    int sy = (q.y - c[1]).sign();
    return sy < 0 || (sy == 0 && (q.x - c[0]).sign() < 0);
  };
  std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
    bool ha = half(a), hb = half(b);
    if (ha != hb) return !ha;
    return cross(a.x - c[0], a.y - c[1], b.x - c[0], b.y - c[1]).sign() > 0;
  });
  std::vector<Point2> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& prev = pts[(i + pts.size() - 1) % pts.size()];
    const Point2& next = pts[(i + 1) % pts.size()];
    if (orientation(prev, pts[i], next) != 0) out.push_back(pts[i]);
  }
  return out;
}

std::vector<Segment2> polygon_edges(const Polytope& p) {
  auto v = polygon_vertices(p);
  std::vector<Segment2> edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    edges.push_back(Segment2::make(v[i], v[(i + 1) % v.size()]));
  }
  return edges;
}

Point2 apply(const Matrix<Scalar>& m, const Point2& p) {
  Vec r = m * p.as_vec();
  return {r[0], r[1]};
}

}  // namespace multitile
