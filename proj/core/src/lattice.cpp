#include "multitile/lattice.hpp"

#include <algorithm>
#include <limits>

#include "multitile/hnf.hpp"

namespace multitile {

// ------------------------------------------------------------------ Lattice

Lattice::Lattice(Matrix<Scalar> basis) {
  if (basis.rows() == 0 || basis.rows() != basis.cols()) {
    throw InvalidInput("lattice basis must be a nonempty square matrix");
  }
  auto data = std::make_shared<Data>();
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      if (!basis(r, c).is_rational()) data->rational = false;
    }
  auto inv = multitile::inverse(basis);
  if (!inv) throw InvalidInput("lattice basis is singular");
  data->basis = std::move(basis);
  data->inverse = std::move(*inv);
  data_ = std::move(data);
}

Lattice Lattice::from_columns(const std::vector<Vec>& columns) {
  return Lattice(Matrix<Scalar>::from_columns(columns));
}

Lattice Lattice::integer(std::size_t d) { return Lattice(Matrix<Scalar>::identity(d)); }

Lattice Lattice::from_rational(const Matrix<Rational>& basis) {
  Matrix<Scalar> m(basis.rows(), basis.cols());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) m(r, c) = Scalar(basis(r, c));
  return Lattice(std::move(m));
}

Vec Lattice::coords(const Vec& v) const {
  if (v.size() != dimension()) throw InvalidInput("point dimension does not match lattice");
  return inverse() * v;
}

Vec Lattice::point(const std::vector<Integer>& coords) const {
  const std::size_t d = dimension();
  Vec out(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (coords[j] == 0) continue;
    Scalar cj(coords[j]);
    for (std::size_t r = 0; r < d; ++r) {
      const Scalar& b = basis()(r, j);
      if (!b.is_zero()) out[r] += b * cj;
    }
  }
  return out;
}

bool Lattice::contains(const Vec& v) const {
  Vec c = coords(v);
  return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_integer(); });
}

Matrix<Rational> Lattice::rational_basis() const {
  if (!is_rational()) throw InvalidInput("lattice basis is not rational");
  Matrix<Rational> m(dimension(), dimension());
  for (std::size_t r = 0; r < dimension(); ++r)
    for (std::size_t c = 0; c < dimension(); ++c) m(r, c) = basis()(r, c).rational_part();
  return m;
}

Matrix<Rational> Lattice::canonical_basis() const { return rational_hnf(rational_basis()); }

bool Lattice::same_as(const Lattice& other) const {
  if (dimension() != other.dimension()) return false;
  if (*this == other) return true;
  Matrix<Scalar> m = inverse() * other.basis();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_integer()) return false;
    }
  Scalar det = determinant(m);
  return det == Scalar(1) || det == Scalar(-1);
}

Lattice Lattice::refined(const Integer& n) const {
  if (n < 1) throw InvalidInput("refinement factor must be a positive integer");
  Matrix<Scalar> b = basis();
  Scalar inv_n(Rational(1, 1) / Rational(n));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) *= inv_n;
  return Lattice(std::move(b));
}

Vec lattice_coords(const Lattice& lattice, const Vec& v) { return lattice.coords(v); }

Lattice refine_lattice(const Lattice& lattice, const Integer& n) { return lattice.refined(n); }

// ------------------------------------------------------------- collections

std::size_t QuasiPeriodicSet::dimension() const {
  if (cosets.empty()) throw InvalidInput("quasi-periodic set has no cosets");
  return cosets.front().dimension();
}

void QuasiPeriodicSet::validate() const {
  const std::size_t d = dimension();
  for (const Coset& c : cosets) {
    if (c.dimension() != d || c.translation.size() != d) {
      throw InvalidInput("cosets of mixed dimension");
    }
    if (c.weight < 1) throw InvalidInput("coset weight must be at least 1");
  }
}

QuasiPeriodicSet QuasiPeriodicSet::subset(const std::vector<std::size_t>& indices) const {
  QuasiPeriodicSet out;
  for (std::size_t i : indices) {
    if (i >= cosets.size()) throw InvalidInput("coset index out of range");
    out.cosets.push_back(cosets[i]);
  }
  return out;
}

std::int64_t WindowMultiset::total() const {
  std::int64_t n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

void WindowMultiset::validate() const {
  if (points.empty()) return;
  const std::size_t d = points.front().point.size();
  for (const auto& p : points) {
    if (p.point.size() != d) throw InvalidInput("window points of mixed dimension");
    if (p.multiplicity < 1) throw InvalidInput("window multiplicity must be at least 1");
  }
}

// -------------------------------------------------------------- enumeration

bool CoordinateBox::empty() const {
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) return true;
  }
  return lo.empty();
}

Integer CoordinateBox::volume() const {
  if (empty()) return 0;
  Integer v = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j] + 1;
  return v;
}

CoordinateBox coordinate_box(const Coset& coset, const Vec& lo, const Vec& hi) {
  const std::size_t d = coset.dimension();
  if (lo.size() != d || hi.size() != d) throw InvalidInput("box dimension mismatch");
  const Matrix<Scalar>& inv = coset.lattice.inverse();
  Vec shift = inv * coset.translation;
  CoordinateBox box;
  box.lo.resize(d);
  box.hi.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    Scalar min = -shift[j];
    Scalar max = -shift[j];
    for (std::size_t k = 0; k < d; ++k) {
      const Scalar& r = inv(j, k);
      int s = r.sign();
      if (s == 0) continue;
      if (s > 0) {
        min += r * lo[k];
        max += r * hi[k];
      } else {
        min += r * hi[k];
        max += r * lo[k];
      }
    }
    box.lo[j] = min.ceil();
    box.hi[j] = max.floor();
  }
  return box;
}

namespace {

bool fits_int64(const Integer& z) {
  static const Integer kLimit = Integer(1) << 62;
  return abs(z) < kLimit;
}

Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const Rational& v : values) l = lcm_of(l, v.get_den());
  return l;
}

// Affine functions of the integer lattice coordinates with int64 coefficients:
// value_i(c) = constant_i + sum_j slope_ij c_j (all scaled by a positive
// common denominator per row).
struct IntegerAffine {
  std::vector<std::int64_t> constant;
  std::vector<std::int64_t> slope;  // row-major rows x d
  std::vector<Integer> denominator;
};

// Builds the int64 kernel when every coefficient is rational and all values
// over the coordinate box stay below 2^62. Otherwise nullopt.
std::optional<IntegerAffine> make_affine(const std::vector<std::vector<Rational>>& slopes,
                                         const std::vector<Rational>& constants,
                                         const CoordinateBox& box) {
  const std::size_t d = box.lo.size();
  IntegerAffine out;
  std::vector<Integer> reach(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!fits_int64(box.lo[j]) || !fits_int64(box.hi[j])) return std::nullopt;
    reach[j] = std::max(abs(box.lo[j]), abs(box.hi[j]));
  }
  for (std::size_t i = 0; i < constants.size(); ++i) {
    std::vector<Rational> row = slopes[i];
    row.push_back(constants[i]);
    Integer den = denominator_lcm(row);
    Integer k = constants[i].get_num() * (den / constants[i].get_den());
    Integer bound = abs(k);
    out.constant.push_back(0);
    for (std::size_t j = 0; j < d; ++j) {
      Integer s = slopes[i][j].get_num() * (den / slopes[i][j].get_den());
      bound += abs(s) * reach[j];
      if (!fits_int64(s)) return std::nullopt;
      out.slope.push_back(s.get_si());
    }
    if (!fits_int64(bound)) return std::nullopt;
    out.constant.back() = k.get_si();
    out.denominator.push_back(den);
  }
  return out;
}

WindowMultiset enumerate_fast(const Coset& coset, const Polytope& p,
                              const std::vector<int>* probe_signs, const CoordinateBox& box,
                              const IntegerAffine& facets, const IntegerAffine& coords) {
  const std::size_t d = coset.dimension();
  const std::size_t m = p.facets().size();
  for (const Integer& den : coords.denominator) {
    if (!den.fits_ulong_p()) throw InvalidInput("coordinate denominator too large");
  }
  std::vector<std::int64_t> lo(d), hi(d), c(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = box.lo[j].get_si();
    hi[j] = box.hi[j].get_si();
  }
  c = lo;
  WindowMultiset out;
  for (;;) {
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i) {
      std::int64_t v = facets.constant[i];
      for (std::size_t j = 0; j < d; ++j) v += facets.slope[i * d + j] * c[j];
      if (v > 0 || (v == 0 && probe_signs && (*probe_signs)[i] > 0)) inside = false;
    }
    if (inside) {
      Vec point(d);
      for (std::size_t k = 0; k < d; ++k) {
        std::int64_t num = coords.constant[k];
        for (std::size_t j = 0; j < d; ++j) num += coords.slope[k * d + j] * c[j];
        Rational x;
        mpq_set_si(x.get_mpq_t(), num, coords.denominator[k].get_ui());
        x.canonicalize();
        point[k] = Scalar(x);
      }
      out.points.push_back({std::move(point), coset.weight});
    }
    std::size_t k = d;
    while (k > 0 && c[k - 1] == hi[k - 1]) {
      c[k - 1] = lo[k - 1];
      --k;
    }
    if (k == 0) break;
    ++c[k - 1];
  }
  return out;
}

WindowMultiset enumerate_impl(const Coset& coset, const Polytope& p,
                              const HalfOpenPolytope* half_open) {
  const std::size_t d = coset.dimension();
  if (p.dimension() != d) throw InvalidInput("polytope and coset dimensions differ");
  CoordinateBox box = coordinate_box(coset, p.box_lo(), p.box_hi());
  if (box.empty()) return {};

  bool rational = coset.lattice.is_rational() && all_rational(coset.translation);
  for (const Facet& f : p.facets()) {
    rational = rational && all_rational(f.normal) && f.offset.is_rational();
  }
  if (rational) {
    const Matrix<Scalar>& b = coset.lattice.basis();
    std::vector<std::vector<Rational>> facet_slopes, coord_slopes;
    std::vector<Rational> facet_constants, coord_constants;
    for (const Facet& f : p.facets()) {
      std::vector<Rational> row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = dot(f.normal, b.column(j)).rational_part();
      facet_slopes.push_back(std::move(row));
      facet_constants.push_back((dot(f.normal, coset.translation) - f.offset).rational_part());
    }
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Rational> row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = b(k, j).rational_part();
      coord_slopes.push_back(std::move(row));
      coord_constants.push_back(coset.translation[k].rational_part());
    }
    auto facets = make_affine(facet_slopes, facet_constants, box);
    auto coords = make_affine(coord_slopes, coord_constants, box);
    if (facets && coords) {
      return enumerate_fast(coset, p, half_open ? &half_open->probe_signs() : nullptr, box,
                            *facets, *coords);
    }
  }

  WindowMultiset out;
  for_each_candidate(coset, p.box_lo(), p.box_hi(), [&](const Vec& point) {
    bool inside = half_open ? half_open->contains(point) : p.contains_closed(point);
    if (inside) out.points.push_back({point, coset.weight});
  });
  return out;
}

}  // namespace

WindowMultiset enumerate_in_box(const Coset& coset, const Vec& lo, const Vec& hi) {
  WindowMultiset out;
  for_each_candidate(coset, lo, hi, [&](const Vec& point) {
    for (std::size_t k = 0; k < point.size(); ++k) {
      if (point[k] < lo[k] || point[k] > hi[k]) return;
    }
    out.points.push_back({point, coset.weight});
  });
  return out;
}

WindowMultiset enumerate_in_polytope(const Coset& coset, const Polytope& p) {
  return enumerate_impl(coset, p, nullptr);
}

WindowMultiset enumerate_in_polytope(const Coset& coset, const HalfOpenPolytope& p) {
  return enumerate_impl(coset, p.base(), &p);
}

std::optional<Lattice> common_period(const QuasiPeriodicSet& q) {
  q.validate();
  const Lattice& first = q.cosets.front().lattice;
  bool shared = true;
  for (const Coset& c : q.cosets) {
    try {
      if (!c.lattice.same_as(first)) shared = false;
    } catch (const FieldClosureViolation&) {
      shared = false;
    }
    if (!shared) break;
  }
  if (shared) return first;
  std::vector<Matrix<Rational>> bases;
  for (const Coset& c : q.cosets) {
    if (!c.lattice.is_rational()) return std::nullopt;
    bases.push_back(c.lattice.rational_basis());
  }
  return Lattice::from_rational(intersect_rational_lattices(bases));
}

HalfOpenPolytope fundamental_domain(const Lattice& lattice) {
  const std::size_t d = lattice.dimension();
  const Matrix<Scalar>& inv = lattice.inverse();
  std::vector<Facet> facets;
  for (std::size_t j = 0; j < d; ++j) {
    Vec row = inv.row(j);
    facets.push_back({-row, Scalar(0)});
    facets.push_back({row, Scalar(1)});
  }
  Polytope p = Polytope::from_facets(std::move(facets));
  // Probe with positive lattice coordinates, so the faces through the origin
  // are the included ones.
  for (std::int64_t radius = 1;; ++radius) {
    std::vector<std::int64_t> h(d, radius);
    for (;;) {
      Vec hv;
      for (auto x : h) hv.emplace_back(static_cast<long>(x));
      Vec c = inv * hv;
      if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.sign() > 0; })) {
        return HalfOpenPolytope(p, ProbeDirection{h});
      }
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

}  // namespace multitile
