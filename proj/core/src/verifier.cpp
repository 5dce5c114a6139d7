#include "multitile/verifier.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "multitile/arrangement.hpp"

namespace multitile {

namespace {

// Collects the generators used by a scalar; returns false on a symbolic one.
bool collect_surds(const Scalar& x, std::set<std::string>& surds) {
  for (const auto& t : x.terms()) {
    if (!t.generator.is_surd()) return false;
    surds.insert(t.generator.key());
  }
  return true;
}

bool collect_surds(const Vec& v, std::set<std::string>& surds) {
  return std::all_of(v.begin(), v.end(), [&](const Scalar& x) { return collect_surds(x, surds); });
}

bool collect_surds(const Matrix<Scalar>& m, std::set<std::string>& surds) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!collect_surds(m.row(r), surds)) return false;
  }
  return true;
}

bool single_field(const Polytope& p, const QuasiPeriodicSet& q) {
  std::set<std::string> surds;
  for (const Facet& f : p.facets()) {
    if (!collect_surds(f.normal, surds) || !collect_surds(f.offset, surds)) return false;
  }
  if (p.vertices()) {
    for (const Vec& v : *p.vertices()) {
      if (!collect_surds(v, surds)) return false;
    }
  }
  for (const Coset& c : q.cosets) {
    if (!collect_surds(c.lattice.basis(), surds) || !collect_surds(c.translation, surds)) {
      return false;
    }
  }
  return surds.size() <= 1;
}

Rational unit_fraction(std::uint64_t k) {
  Integer num = static_cast<unsigned long>(k);
  Integer den = 1;
  den <<= 64;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

template <class Eval>
VerificationResult evaluate_all(const std::vector<const std::vector<Vec>*>& groups, Eval&& eval,
                                TilingCertificate certificate) {
  std::map<std::int64_t, Vec> realizers;
  std::optional<std::int64_t> first;
  std::optional<Vec> witness;
  for (const auto* group : groups) {
    for (const Vec& v : *group) {
      std::int64_t value = eval(v);
      if (!first) first = value;
      if (value != *first && !witness) witness = v;
      realizers.try_emplace(value, v);
    }
  }
  if (realizers.size() > 1) {
    Discrepancy d;
    d.witness = *witness;
    for (auto& [value, point] : realizers) {
      d.observed.push_back(value);
      d.realizers.push_back(point);
    }
    d.mode = certificate.mode;
    return d;
  }
  certificate.multiplicity = first.value_or(0);
  return certificate;
}

template <class Eval>
VerificationResult verify_with(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                               const VerificationMode& mode, bool generic_only, Eval&& eval) {
  q.validate();
  TilingCertificate certificate;
  certificate.mode = mode;
  if (std::holds_alternative<ExactTorus2D>(mode)) {
    if (!exact_mode_available(p, q)) {
      throw ModeUnavailable("exact torus verification needs d = 2, a common period and "
                            "scalars in one quadratic field");
    }
    AmbientFaces faces = arrangement_faces(p.base(), q);
    certificate.certified = true;
    certificate.period = faces.period;
    certificate.cells_checked = faces.cell_points.size();
    if (generic_only) {
      return evaluate_all({&faces.cell_points}, eval, std::move(certificate));
    }
    certificate.edges_checked = faces.edge_points.size();
    certificate.vertices_checked = faces.vertices.size();
    return evaluate_all({&faces.cell_points, &faces.edge_points, &faces.vertices}, eval,
                        std::move(certificate));
  }
  const Sampled& s = std::get<Sampled>(mode);
  std::vector<Vec> points;
  if (s.region) {
    points = sample_box(s.region->first, s.region->second, s.count, s.seed);
  } else if (auto period = common_period(q)) {
    points = sample_fundamental_domain(*period, s.count, s.seed);
    certificate.period = *period;
  } else {
    points = sample_box(p.base().box_lo(), p.base().box_hi(), s.count, s.seed);
  }
  certificate.samples_checked = points.size();
  return evaluate_all({&points}, eval, std::move(certificate));
}

std::string describe_line(const Segment2& s) {
  if (s.is_vertical()) return "x = " + to_string(s.a.x);
  if (s.a.y == s.b.y) return "y = " + to_string(s.a.y);
  // (y - ay)(bx - ax) = (x - ax)(by - ay)
  Scalar a = s.b.y - s.a.y;
  Scalar b = s.a.x - s.b.x;
  Scalar c = a * s.a.x + b * s.a.y;
  return "(" + to_string(a) + ")*x + (" + to_string(b) + ")*y = " + to_string(c);
}

std::string describe(const std::vector<Segment2>& witness) {
  std::vector<std::string> lines;
  for (const Segment2& s : witness) {
    std::string l = describe_line(s);
    if (std::find(lines.begin(), lines.end(), l) == lines.end()) lines.push_back(l);
  }
  std::ostringstream out;
  out << "segments on";
  for (std::size_t i = 0; i < lines.size(); ++i) out << (i ? "; " : " ") << lines[i];
  out << " inside the fundamental domain, repeated by the period lattice";
  return out.str();
}

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& chosen, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(chosen.begin(), chosen.end(), j) == chosen.end()) out.push_back(j);
  }
  return out;
}

PipelineOutcome finish_pipeline(const HalfOpenPolytope& p, const QuasiPeriodicSet& sub,
                                ConnectivityVerdict verdict, const VerificationMode& mode) {
  PipelineOutcome out{std::nullopt, std::move(verdict), std::nullopt, ""};
  if (std::holds_alternative<Disconnected>(out.connectivity)) {
    out.reason = "general position fails: complement is disconnected";
    return out;
  }
  if (const auto* inc = std::get_if<Inconclusive>(&out.connectivity)) {
    out.reason = "general position undecided: " + inc->reason;
    return out;
  }
  out.verification = verify_constant_multiplicity(p, sub, mode);
  if (const auto* c = std::get_if<TilingCertificate>(&*out.verification)) {
    out.multiplicity = c->multiplicity;
  } else {
    out.reason = "enumerator is not constant";
  }
  return out;
}

}  // namespace

bool exact_mode_available(const HalfOpenPolytope& p, const QuasiPeriodicSet& q) {
  if (p.base().dimension() != 2 || q.dimension() != 2) return false;
  if (!single_field(p.base(), q)) return false;
  return common_period(q).has_value();
}

AmbientFaces arrangement_faces(const Polytope& p, const QuasiPeriodicSet& q) {
  auto period = common_period(q);
  if (!period) throw ModeUnavailable("no common period lattice");
  std::vector<Segment2> segments;
  for (const Coset& c : q.cosets) {
    auto e = torus_edges(p, c, *period);
    segments.insert(segments.end(), e.begin(), e.end());
  }
  segments = unique_segments(std::move(segments));
  FaceRepresentatives faces = torus_faces(segments);
  const Matrix<Scalar>& b = period->basis();
  auto map_all = [&](const std::vector<Point2>& pts) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Point2& u : pts) out.push_back(b * u.as_vec());
    return out;
  };
  return AmbientFaces{*period, map_all(faces.vertices), map_all(faces.edge_points),
                      map_all(faces.cell_points), segments.size()};
}

std::vector<Vec> sample_fundamental_domain(const Lattice& lattice, std::uint64_t count,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t d = lattice.dimension();
  std::vector<Vec> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Vec u(d);
    for (auto& x : u) x = unit_fraction(rng());
    out.push_back(lattice.basis() * u);
  }
  return out;
}

std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, std::uint64_t count,
                            std::uint64_t seed) {
  if (lo.size() != hi.size()) throw InvalidInput("sampling box corners differ in dimension");
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Vec v(lo.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] = lo[k] + (hi[k] - lo[k]) * Scalar(unit_fraction(rng()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

VerificationResult verify_constant_multiplicity(const HalfOpenPolytope& p,
                                                const QuasiPeriodicSet& q,
                                                const VerificationMode& mode) {
  EnumeratorContext ctx(p, q);
  return verify_with(p, q, mode, false, [&](const Vec& v) { return L_half_open(ctx, v); });
}

VerificationResult verify_generic_multiplicity(const HalfOpenPolytope& p,
                                               const QuasiPeriodicSet& q,
                                               const VerificationMode& mode) {
  EnumeratorContext ctx(p, q);
  return verify_with(p, q, mode, true, [&](const Vec& v) { return L_closed(ctx, v); });
}

ConnectivityVerdict group_connectivity(const Polytope& p, const QuasiPeriodicSet& q,
                                       const std::vector<std::size_t>& first,
                                       const std::vector<std::size_t>& second) {
  q.validate();
  for (std::size_t i : first) {
    if (i >= q.cosets.size()) throw InvalidInput("coset index out of range");
  }
  for (std::size_t i : second) {
    if (i >= q.cosets.size()) throw InvalidInput("coset index out of range");
  }
  if (first.empty()) throw InvalidInput("the first group of cosets is empty");
  if (second.empty()) return Connected{};
  if (p.dimension() != 2) return Inconclusive{"connectivity is only decided for d = 2"};
  auto period = common_period(q);
  if (!period) return Inconclusive{"the cosets have no common period lattice"};
  if (!single_field(p, q)) return Inconclusive{"scalars leave a single quadratic field"};

  auto edges_of = [&](const std::vector<std::size_t>& group) {
    std::vector<Segment2> out;
    for (std::size_t i : group) {
      auto e = torus_edges(p, q.cosets[i], *period);
      out.insert(out.end(), e.begin(), e.end());
    }
    return unique_segments(std::move(out));
  };
  std::vector<Segment2> blockers = collinear_overlaps(edges_of(first), edges_of(second));
  TorusConnectivity c = complement_connectivity(blockers);
  if (c.connected) return Connected{};

  Disconnected d;
  const Matrix<Scalar>& b = period->basis();
  for (const Segment2& s : merge_collinear(blockers)) {
    d.witness.push_back(Segment2::make(apply(b, s.a), apply(b, s.b)));
  }
  d.description = describe(d.witness);
  return d;
}

ConnectivityVerdict general_position_check(const Polytope& p, const QuasiPeriodicSet& q,
                                           std::size_t i) {
  if (i >= q.cosets.size()) throw InvalidInput("coset index out of range");
  return group_connectivity(p, q, {i}, complement_of({i}, q.cosets.size()));
}

PipelineOutcome theorem_1_1_pipeline(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                                     std::size_t i, const VerificationMode& mode) {
  if (i >= q.cosets.size()) throw InvalidInput("coset index out of range");
  return finish_pipeline(p, q.subset({i}), general_position_check(p.base(), q, i), mode);
}

PipelineOutcome split_check(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                            const std::vector<std::size_t>& first,
                            const std::vector<std::size_t>& second,
                            const VerificationMode& mode) {
  return finish_pipeline(p, q.subset(first), group_connectivity(p.base(), q, first, second),
                         mode);
}

VerificationMode preferred_mode(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                                const Sampled& fallback) {
  if (exact_mode_available(p, q)) return ExactTorus2D{};
  return fallback;
}

}  // namespace multitile
