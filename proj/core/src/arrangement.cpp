#include "multitile/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "multitile/hnf.hpp"

namespace multitile {

namespace {

const Scalar kHalf(Rational(1, 2));

bool segment_less(const Segment2& s, const Segment2& t) {
  if (s.a != t.a) return lex_less(s.a, t.a);
  return lex_less(s.b, t.b);
}

bool boxes_overlap(const Segment2& s, const Segment2& t) {
  // endpoints are x-ordered; y needs both orders
  if (t.b.x < s.a.x || s.b.x < t.a.x) return false;
  const Scalar& sy0 = s.a.y < s.b.y ? s.a.y : s.b.y;
  const Scalar& sy1 = s.a.y < s.b.y ? s.b.y : s.a.y;
  const Scalar& ty0 = t.a.y < t.b.y ? t.a.y : t.b.y;
  const Scalar& ty1 = t.a.y < t.b.y ? t.b.y : t.a.y;
  return !(ty1 < sy0 || sy1 < ty0);
}

bool collinear(const Segment2& s, const Segment2& t) {
  return orientation(s.a, s.b, t.a) == 0 && orientation(s.a, s.b, t.b) == 0;
}

void sort_unique(std::vector<Point2>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

void sort_unique(std::vector<Scalar>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

std::size_t index_of(const std::vector<Scalar>& xs, const Scalar& x) {
  return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
}

std::vector<Segment2> unit_square_boundary() {
  Point2 p00{0, 0}, p10{1, 0}, p01{0, 1}, p11{1, 1};
  return {Segment2::make(p00, p10), Segment2::make(p01, p11), Segment2::make(p00, p01),
          Segment2::make(p10, p11)};
}

// Whether the open interval (lo, hi) has a point outside every closed interval.
bool open_gap_remains(const Scalar& lo, const Scalar& hi,
                      std::vector<std::pair<Scalar, Scalar>> covers) {
  if (!(lo < hi)) return false;
  std::sort(covers.begin(), covers.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Scalar cur = lo;
  for (const auto& [a, b] : covers) {
    if (!(cur < hi)) return false;
    if (cur < a) return true;
    if (cur < b) cur = b;
  }
  return cur < hi;
}

struct SlabCell {
  Scalar left_lo, left_hi, right_lo, right_hi;
};

struct Adjacency {
  std::size_t from;
  std::size_t to;
  std::int64_t dx;
  std::int64_t dy;
};

}  // namespace

std::vector<Segment2> unique_segments(std::vector<Segment2> segments) {
  std::sort(segments.begin(), segments.end(), segment_less);
  segments.erase(std::unique(segments.begin(), segments.end()), segments.end());
  return segments;
}

std::vector<Segment2> torus_edges(const Polytope& p, const Coset& coset, const Lattice& period) {
  if (p.dimension() != 2 || coset.dimension() != 2 || period.dimension() != 2) {
    throw DimensionUnsupported("torus arrangements need d = 2");
  }
  const Matrix<Scalar>& inv = period.inverse();
  std::vector<Segment2> edges;
  for (const Segment2& e : polygon_edges(p)) {
    edges.push_back(Segment2::make(apply(inv, e.a), apply(inv, e.b)));
  }
  Scalar lox = edges.front().a.x, hix = lox, loy = edges.front().a.y, hiy = loy;
  for (const Segment2& e : edges) {
    for (const Point2* q : {&e.a, &e.b}) {
      if (q->x < lox) lox = q->x;
      if (hix < q->x) hix = q->x;
      if (q->y < loy) loy = q->y;
      if (hiy < q->y) hiy = q->y;
    }
  }
  Coset mapped{Lattice(inv * coset.lattice.basis()), inv * coset.translation, coset.weight};
  const Point2 zero{0, 0}, one{1, 1};
  std::vector<Segment2> out;
  for_each_candidate(mapped, Vec{-hix, -hiy}, Vec{Scalar(1) - lox, Scalar(1) - loy},
                     [&](const Vec& mu) {
                       for (const Segment2& e : edges) {
                         Segment2 moved = Segment2::make({e.a.x + mu[0], e.a.y + mu[1]},
                                                         {e.b.x + mu[0], e.b.y + mu[1]});
                         if (auto c = clip_to_box(moved, zero, one)) out.push_back(std::move(*c));
                       }
                     });
  return unique_segments(std::move(out));
}

FaceRepresentatives torus_faces(const std::vector<Segment2>& input) {
  std::vector<Segment2> segs = input;
  for (Segment2& s : unit_square_boundary()) segs.push_back(std::move(s));
  segs = unique_segments(std::move(segs));
  const std::size_t n = segs.size();

  std::vector<std::vector<Point2>> on(n);
  for (std::size_t i = 0; i < n; ++i) {
    on[i].push_back(segs[i].a);
    on[i].push_back(segs[i].b);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!boxes_overlap(segs[i], segs[j])) continue;
      auto r = intersect(segs[i], segs[j]);
      if (const auto* q = std::get_if<Point2>(&r)) {
        on[i].push_back(*q);
        on[j].push_back(*q);
      } else if (const auto* s = std::get_if<Segment2>(&r)) {
        for (auto* list : {&on[i], &on[j]}) {
          list->push_back(s->a);
          list->push_back(s->b);
        }
      }
    }
  }

  FaceRepresentatives out;
  for (std::size_t i = 0; i < n; ++i) {
    sort_unique(on[i]);
    for (std::size_t k = 0; k + 1 < on[i].size(); ++k) {
      out.edge_points.push_back(midpoint(on[i][k], on[i][k + 1]));
    }
    out.vertices.insert(out.vertices.end(), on[i].begin(), on[i].end());
  }
  sort_unique(out.vertices);
  sort_unique(out.edge_points);

  std::vector<Scalar> xs;
  for (const Point2& v : out.vertices) xs.push_back(v.x);
  sort_unique(xs);
  std::vector<std::vector<std::size_t>> slab_segments(xs.size() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (segs[i].is_vertical()) continue;
    for (std::size_t s = index_of(xs, segs[i].a.x); s < index_of(xs, segs[i].b.x); ++s) {
      slab_segments[s].push_back(i);
    }
  }
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    Scalar xm = (xs[s] + xs[s + 1]) * kHalf;
    std::vector<Scalar> ys;
    for (std::size_t i : slab_segments[s]) ys.push_back(y_at(segs[i], xm));
    sort_unique(ys);
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
      out.cell_points.push_back({xm, (ys[k] + ys[k + 1]) * kHalf});
    }
  }
  return out;
}

std::vector<Segment2> collinear_overlaps(const std::vector<Segment2>& a,
                                         const std::vector<Segment2>& b) {
  std::vector<Segment2> out;
  for (const Segment2& s : a) {
    for (const Segment2& t : b) {
      if (!boxes_overlap(s, t)) continue;
      auto r = intersect(s, t);
      if (const auto* o = std::get_if<Segment2>(&r)) out.push_back(*o);
    }
  }
  return unique_segments(std::move(out));
}

std::vector<Segment2> merge_collinear(std::vector<Segment2> segments) {
  segments = unique_segments(std::move(segments));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < segments.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < segments.size() && !changed; ++j) {
        const Segment2& s = segments[i];
        const Segment2& t = segments[j];
        if (!collinear(s, t) || std::holds_alternative<NoIntersection>(intersect(s, t))) continue;
        Point2 a = lex_less(s.a, t.a) ? s.a : t.a;
        Point2 b = lex_less(s.b, t.b) ? t.b : s.b;
        segments[i] = Segment2{std::move(a), std::move(b)};
        segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  return unique_segments(std::move(segments));
}

TorusConnectivity complement_connectivity(const std::vector<Segment2>& blockers) {
  const std::vector<Segment2> segs = unique_segments(blockers);
  const Scalar zero(0), one(1);

  std::vector<Scalar> xs{zero, one};
  for (const Segment2& s : segs) {
    xs.push_back(s.a.x);
    xs.push_back(s.b.x);
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (!boxes_overlap(segs[i], segs[j])) continue;
      auto r = intersect(segs[i], segs[j]);
      if (const auto* q = std::get_if<Point2>(&r)) xs.push_back(q->x);
    }
  }
  sort_unique(xs);
  const std::size_t slabs = xs.size() - 1;
  const std::size_t last_boundary = slabs;

  // Vertical blockers by slab boundary; x = 0 and x = 1 are the same line.
  std::vector<std::vector<std::pair<Scalar, Scalar>>> walls(xs.size());
  std::vector<bool> y_blocked(slabs, false);
  std::vector<std::vector<std::size_t>> crossing(slabs);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment2& s = segs[i];
    if (s.is_vertical()) {
      std::size_t b = index_of(xs, s.a.x);
      auto interval = std::make_pair(s.a.y, s.b.y);
      if (b == 0 || b == last_boundary) {
        walls[0].push_back(interval);
        walls[last_boundary].push_back(interval);
      } else {
        walls[b].push_back(interval);
      }
      continue;
    }
    bool border = s.a.y == s.b.y && (s.a.y == zero || s.a.y == one);
    for (std::size_t k = index_of(xs, s.a.x); k < index_of(xs, s.b.x); ++k) {
      if (border) {
        y_blocked[k] = true;
      } else {
        crossing[k].push_back(i);
      }
    }
  }

  // Trapezoids of every slab, bottom to top.
  std::vector<std::vector<SlabCell>> cells(slabs);
  std::vector<std::size_t> first_id(slabs + 1, 0);
  for (std::size_t k = 0; k < slabs; ++k) {
    const Scalar& xl = xs[k];
    const Scalar& xr = xs[k + 1];
    Scalar xm = (xl + xr) * kHalf;
    std::vector<std::pair<Scalar, std::size_t>> order;
    for (std::size_t i : crossing[k]) order.emplace_back(y_at(segs[i], xm), i);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    order.erase(std::unique(order.begin(), order.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                order.end());
    Scalar prev_l = zero, prev_r = zero;
    for (const auto& [ym, i] : order) {
      Scalar yl = y_at(segs[i], xl), yr = y_at(segs[i], xr);
      cells[k].push_back({prev_l, yl, prev_r, yr});
      prev_l = std::move(yl);
      prev_r = std::move(yr);
    }
    cells[k].push_back({prev_l, one, prev_r, one});
    first_id[k + 1] = first_id[k] + cells[k].size();
  }
  const std::size_t total = first_id[slabs];

  std::vector<Adjacency> edges;
  auto join = [&](std::size_t left_slab, std::size_t right_slab, std::size_t boundary,
                  std::int64_t dx) {
    const auto& lc = cells[left_slab];
    const auto& rc = cells[right_slab];
    std::size_t i = 0, j = 0;
    while (i < lc.size() && j < rc.size()) {
      const Scalar& lo = lc[i].right_lo < rc[j].left_lo ? rc[j].left_lo : lc[i].right_lo;
      const Scalar& hi = lc[i].right_hi < rc[j].left_hi ? lc[i].right_hi : rc[j].left_hi;
      if (open_gap_remains(lo, hi, walls[boundary])) {
        edges.push_back({first_id[left_slab] + i, first_id[right_slab] + j, dx, 0});
      }
      int c = compare(lc[i].right_hi, rc[j].left_hi);
      if (c <= 0) ++i;
      if (c >= 0) ++j;
    }
  };
  for (std::size_t k = 0; k + 1 < slabs; ++k) join(k, k + 1, k + 1, 0);
  join(slabs - 1, 0, last_boundary, 1);
  for (std::size_t k = 0; k < slabs; ++k) {
    if (!y_blocked[k]) edges.push_back({first_id[k] + cells[k].size() - 1, first_id[k], 0, 1});
  }

  // Potentials on a spanning forest; every edge then closes a cycle whose
  // displacement is a deck transformation reached inside the complement.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(total);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].from].emplace_back(e, edges[e].to);
    adj[edges[e].to].emplace_back(e, edges[e].from);
  }
  std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> pot(total);
  std::deque<std::size_t> queue{0};
  pot[0] = std::make_pair(0, 0);
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (const auto& [e, other] : adj[c]) {
      if (pot[other]) continue;
      const Adjacency& a = edges[e];
      std::int64_t sign = (a.from == c) ? 1 : -1;
      pot[other] = std::make_pair(pot[c]->first + sign * a.dx, pot[c]->second + sign * a.dy);
      queue.push_back(other);
      ++reached;
    }
  }

  TorusConnectivity result;
  result.cells = total;
  result.adjacencies = edges.size();
  result.torus_connected = reached == total;
  if (!result.torus_connected) return result;
  std::vector<std::vector<Integer>> cycles;
  for (const Adjacency& a : edges) {
    std::int64_t cx = pot[a.from]->first + a.dx - pot[a.to]->first;
    std::int64_t cy = pot[a.from]->second + a.dy - pot[a.to]->second;
    if (cx != 0 || cy != 0) cycles.push_back({Integer(static_cast<long>(cx)), Integer(static_cast<long>(cy))});
  }
  result.connected = generates_integer_lattice(cycles, 2);
  return result;
}

}  // namespace multitile
