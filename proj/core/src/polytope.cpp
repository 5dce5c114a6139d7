#include "multitile/polytope.hpp"

#include <algorithm>
#include <set>

#include "multitile/linalg.hpp"
#include "multitile/simplex.hpp"

namespace multitile {

namespace {

Facet normalize_facet(Facet f) {
  auto first = std::find_if(f.normal.begin(), f.normal.end(),
                            [](const Scalar& s) { return !s.is_zero(); });
  if (first == f.normal.end()) throw InvalidInput("facet with zero normal");
  Scalar scale = first->abs();
  if (scale == Scalar(1)) return f;
  for (Scalar& s : f.normal) s /= scale;
  f.offset /= scale;
  return f;
}

Scalar cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

Polytope Polytope::from_facets(std::vector<Facet> facets) {
  return build(std::move(facets), std::nullopt);
}

Polytope Polytope::build(std::vector<Facet> facets, std::optional<std::vector<Vec>> vertices) {
  if (facets.empty()) throw InvalidInput("polytope needs at least one facet");
  const std::size_t d = facets.front().normal.size();
  if (d == 0) throw InvalidInput("polytope dimension must be positive");
  std::vector<Facet> unique;
  for (Facet& f : facets) {
    if (f.normal.size() != d) throw InvalidInput("facet normals of mixed dimension");
    Facet n = normalize_facet(std::move(f));
    if (std::find(unique.begin(), unique.end(), n) == unique.end()) unique.push_back(std::move(n));
  }
  if (unique.size() < d + 1) throw InvalidInput("polytope is unbounded (too few facets)");

  const std::size_t m = unique.size();
  Matrix<Scalar> a(m, d);
  std::vector<Scalar> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < d; ++c) a(r, c) = unique[r].normal[c];
    b[r] = unique[r].offset;
  }

  auto data = std::make_shared<Data>();
  data->dimension = d;
  data->lo.resize(d);
  data->hi.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Scalar> cost(d);
    cost[k] = 1;
    auto up = maximize_free(a, b, cost);
    if (up.status == LpStatus::Infeasible) throw InvalidInput("polytope is empty");
    if (up.status == LpStatus::Unbounded) throw InvalidInput("polytope is unbounded");
    cost[k] = -1;
    auto down = maximize_free(a, b, cost);
    if (down.status != LpStatus::Optimal) throw InvalidInput("polytope is unbounded");
    data->hi[k] = up.value;
    data->lo[k] = -down.value;
  }

  // Full-dimensionality: maximise t subject to A x + t <= b, t <= 1.
  Matrix<Scalar> ext(m + 1, d + 1);
  std::vector<Scalar> rhs(m + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < d; ++c) ext(r, c) = a(r, c);
    ext(r, d) = 1;
    rhs[r] = b[r];
  }
  ext(m, d) = 1;
  rhs[m] = 1;
  std::vector<Scalar> cost(d + 1);
  cost[d] = 1;
  auto slack = maximize_free(ext, rhs, cost);
  if (slack.status != LpStatus::Optimal || slack.value.sign() <= 0) {
    throw InvalidInput("polytope is not full-dimensional");
  }
  data->interior.assign(slack.x.begin(), slack.x.begin() + static_cast<std::ptrdiff_t>(d));
  data->facets = std::move(unique);
  data->vertices = std::move(vertices);
  return Polytope(std::move(data));
}

Polytope Polytope::from_vertices(const std::vector<Vec>& input) {
  if (input.empty()) throw InvalidInput("vertex list is empty");
  const std::size_t d = input.front().size();
  if (d == 0) throw InvalidInput("vertex dimension must be positive");
  for (const Vec& v : input) {
    if (v.size() != d) throw InvalidInput("vertices of mixed dimension");
  }

  if (d == 1) {
    Scalar lo = input.front()[0], hi = input.front()[0];
    for (const Vec& v : input) {
      if (v[0] < lo) lo = v[0];
      if (v[0] > hi) hi = v[0];
    }
    if (!(lo < hi)) throw InvalidInput("polytope is not full-dimensional");
    return build({{{Scalar(-1)}, -lo}, {{Scalar(1)}, hi}}, std::vector<Vec>{{lo}, {hi}});
  }

  if (d == 2) {
    std::vector<Vec> pts = input;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw InvalidInput("polytope is not full-dimensional");
    // Andrew's monotone chain; collinear points are dropped.
    std::vector<Vec> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Vec& p : pts) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
      hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw InvalidInput("polytope is not full-dimensional");
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vec& p = hull[i];
      const Vec& q = hull[(i + 1) % hull.size()];
      Vec normal{q[1] - p[1], p[0] - q[0]};
      Scalar offset = dot(normal, p);
      facets.push_back({std::move(normal), std::move(offset)});
    }
    return build(std::move(facets), std::move(hull));
  }

  // d >= 3: only axis-aligned boxes.
  Vec lo = input.front(), hi = input.front();
  for (const Vec& v : input) {
    for (std::size_t k = 0; k < d; ++k) {
      if (v[k] < lo[k]) lo[k] = v[k];
      if (v[k] > hi[k]) hi[k] = v[k];
    }
  }
  std::set<std::vector<bool>> corners;
  for (const Vec& v : input) {
    std::vector<bool> corner(d);
    for (std::size_t k = 0; k < d; ++k) {
      if (v[k] == hi[k]) {
        corner[k] = true;
      } else if (!(v[k] == lo[k])) {
        throw DimensionUnsupported(
            "convex hull of a general vertex set needs d <= 2; supply facets instead");
      }
    }
    corners.insert(corner);
  }
  if (d >= 63 || corners.size() != (std::size_t{1} << d)) {
    throw DimensionUnsupported(
        "convex hull of a general vertex set needs d <= 2; supply facets instead");
  }
  return box(lo, hi);
}

Polytope Polytope::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw InvalidInput("bad box bounds");
  const std::size_t d = lo.size();
  std::vector<Facet> facets;
  for (std::size_t k = 0; k < d; ++k) {
    if (!(lo[k] < hi[k])) throw InvalidInput("polytope is not full-dimensional");
    Vec down(d), up(d);
    down[k] = -1;
    up[k] = 1;
    facets.push_back({std::move(down), -lo[k]});
    facets.push_back({std::move(up), hi[k]});
  }
  auto data = std::make_shared<Data>();
  data->dimension = d;
  data->facets = std::move(facets);
  data->lo = lo;
  data->hi = hi;
  data->interior.resize(d);
  for (std::size_t k = 0; k < d; ++k) data->interior[k] = (lo[k] + hi[k]) / Scalar(2);
  return Polytope(std::move(data));
}

bool Polytope::contains_closed(const Vec& v) const {
  if (v.size() != dimension()) throw InvalidInput("point dimension does not match polytope");
  for (const Facet& f : facets()) {
    if (compare(dot(f.normal, v), f.offset) > 0) return false;
  }
  return true;
}

bool Polytope::contains_interior(const Vec& v) const {
  if (v.size() != dimension()) throw InvalidInput("point dimension does not match polytope");
  for (const Facet& f : facets()) {
    if (compare(dot(f.normal, v), f.offset) >= 0) return false;
  }
  return true;
}

Polytope Polytope::translated(const Vec& t) const {
  if (t.size() != dimension()) throw InvalidInput("translation dimension mismatch");
  auto data = std::make_shared<Data>(*data_);
  for (Facet& f : data->facets) f.offset += dot(f.normal, t);
  if (data->vertices) {
    for (Vec& v : *data->vertices) v = v + t;
  }
  data->lo = data->lo + t;
  data->hi = data->hi + t;
  data->interior = data->interior + t;
  return Polytope(std::move(data));
}

Vec ProbeDirection::as_vec() const {
  Vec v;
  v.reserve(h.size());
  for (auto x : h) v.emplace_back(static_cast<long>(x));
  return v;
}

bool is_valid_probe(const Polytope& p, const ProbeDirection& probe) {
  if (probe.h.size() != p.dimension()) return false;
  Vec h = probe.as_vec();
  return std::none_of(p.facets().begin(), p.facets().end(),
                      [&](const Facet& f) { return dot(f.normal, h).is_zero(); });
}

ProbeDirection find_probe_direction(const Polytope& p) {
  const std::size_t d = p.dimension();
  for (std::int64_t radius = 1;; ++radius) {
    // Odometer over [-radius, radius]^d in lexicographically descending order.
    std::vector<std::int64_t> h(d, radius);
    for (;;) {
      bool on_shell = std::any_of(h.begin(), h.end(),
                                  [&](std::int64_t x) { return x == radius || x == -radius; });
      if (on_shell && is_valid_probe(p, ProbeDirection{h})) return ProbeDirection{h};
      std::size_t k = d;
      while (k > 0 && h[k - 1] == -radius) {
        h[k - 1] = radius;
        --k;
      }
      if (k == 0) break;
      --h[k - 1];
    }
  }
}

HalfOpenPolytope::HalfOpenPolytope(Polytope base, ProbeDirection probe)
    : base_(std::move(base)), probe_(std::move(probe)) {
  if (probe_.h.size() != base_.dimension()) throw InvalidInput("probe dimension mismatch");
  Vec h = probe_.as_vec();
  for (const Facet& f : base_.facets()) {
    int s = dot(f.normal, h).sign();
    if (s == 0) throw InvalidInput("probe direction is parallel to a facet");
    probe_signs_.push_back(s);
  }
}

HalfOpenPolytope::HalfOpenPolytope(Polytope base)
    : HalfOpenPolytope(base, find_probe_direction(base)) {}

bool HalfOpenPolytope::contains(const Vec& v) const {
  if (v.size() != base_.dimension()) throw InvalidInput("point dimension does not match polytope");
  const auto& facets = base_.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    int s = compare(dot(facets[i].normal, v), facets[i].offset);
    if (s > 0) return false;
    if (s == 0 && probe_signs_[i] > 0) return false;
  }
  return true;
}

}  // namespace multitile
