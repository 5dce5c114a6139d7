#pragma once

// Independent reference computations for the tests. Everything here works on
// plain rationals with straightforward loops and avoids the library's
// geometry and enumeration code paths.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "multitile/enumerator.hpp"
#include "multitile/lattice.hpp"

namespace oracle {

using multitile::Integer;
using multitile::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  // p/q with |p/q| roughly in [lo, hi] and 1 <= q <= max_den.
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
    std::int64_t q = integer(1, max_den);
    std::int64_t p = integer(lo * q, hi * q);
    Rational r(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
    r.canonicalize();
    return r;
  }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// floor(sqrt(n)) by bisection on squares.
inline Integer isqrt_bisect(const Integer& n) {
  Integer lo = 0, hi = 1;
  while (hi * hi <= n) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (mid * mid <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Rational bounds lo <= sqrt(r) <= hi with hi - lo <= 2^-bits, r integer >= 0.
inline std::pair<Rational, Rational> sqrt_bounds(const Integer& r, unsigned bits) {
  Integer scale = 1;
  scale <<= bits;
  Integer s = isqrt_bisect(r * scale * scale);
  Rational lo(s, scale), hi(s + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

// Sign of a + b*sqrt(r) by refining rational bounds of sqrt(r).
inline int sign_a_plus_b_sqrt(const Rational& a, const Rational& b, const Integer& r) {
  if (sgn(b) == 0) return sgn(a);
  for (unsigned bits = 8; bits <= 4096; bits *= 2) {
    auto [lo, hi] = sqrt_bounds(r, bits);
    Rational x = a + b * lo, y = a + b * hi;
    if (sgn(x) > 0 && sgn(y) > 0) return 1;
    if (sgn(x) < 0 && sgn(y) < 0) return -1;
  }
  return 0;  // only reachable for an exact zero, impossible with r non-square and b != 0
}

// Floor of a + b*sqrt(r).
inline Integer floor_a_plus_b_sqrt(const Rational& a, const Rational& b, const Integer& r) {
  for (unsigned bits = 16;; bits *= 2) {
    auto [lo, hi] = sqrt_bounds(r, bits);
    Rational x = a + b * lo, y = a + b * hi;
    if (x > y) std::swap(x, y);
    Integer fx, fy;
    mpz_fdiv_q(fx.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_fdiv_q(fy.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    if (fx == fy) return fx;
  }
}

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;  // RMat[c] is column c

inline RVec apply(const RMat& columns, const std::vector<Integer>& c) {
  RVec out(columns.front().size(), Rational(0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += columns[j][i] * c[j];
  return out;
}

// Rational polytope {x : <n_i, x> <= c_i} with the half-open rule for probe h.
struct RPolytope {
  std::vector<RVec> normals;
  RVec offsets;

  bool closed(const RVec& x) const {
    for (std::size_t i = 0; i < normals.size(); ++i) {
      Rational s = 0;
      for (std::size_t k = 0; k < x.size(); ++k) s += normals[i][k] * x[k];
      if (s > offsets[i]) return false;
    }
    return true;
  }
  bool half_open(const RVec& x, const std::vector<std::int64_t>& h) const {
    for (std::size_t i = 0; i < normals.size(); ++i) {
      Rational s = 0, t = 0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        s += normals[i][k] * x[k];
        t += normals[i][k] * Rational(Integer(static_cast<long>(h[k])));
      }
      if (s > offsets[i]) return false;
      if (s == offsets[i] && sgn(t) >= 0) return false;
    }
    return true;
  }
};

inline RPolytope rbox(const RVec& lo, const RVec& hi) {
  RPolytope p;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    RVec up(lo.size(), Rational(0)), down(lo.size(), Rational(0));
    up[k] = 1;
    down[k] = -1;
    p.normals.push_back(up);
    p.offsets.push_back(hi[k]);
    p.normals.push_back(down);
    p.offsets.push_back(-lo[k]);
  }
  return p;
}

// Calls f(c) for every integer vector in [-radius, radius]^d.
template <class F>
void scan_cube(std::size_t d, std::int64_t radius, F&& f) {
  std::vector<Integer> c(d, Integer(static_cast<long>(-radius)));
  for (;;) {
    f(c);
    std::size_t k = d;
    while (k > 0 && c[k - 1] == radius) {
      c[k - 1] = -radius;
      --k;
    }
    if (k == 0) return;
    ++c[k - 1];
  }
}

// Lattice points t + B c in P (closed or half-open) over a cube of integer
// coordinates large enough to contain every candidate.
inline std::vector<RVec> naive_points(const RMat& basis, const RVec& t, const RPolytope& p,
                                      const std::vector<std::int64_t>* probe,
                                      std::int64_t radius) {
  std::vector<RVec> out;
  scan_cube(basis.size(), radius, [&](const std::vector<Integer>& c) {
    RVec x = apply(basis, c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += t[i];
    if (probe ? p.half_open(x, *probe) : p.closed(x)) out.push_back(x);
  });
  return out;
}

inline multitile::Vec to_vec(const RVec& v) {
  multitile::Vec out;
  for (const Rational& x : v) out.emplace_back(x);
  return out;
}

inline multitile::Lattice to_lattice(const RMat& columns) {
  std::vector<multitile::Vec> cols;
  for (const RVec& c : columns) cols.push_back(to_vec(c));
  return multitile::Lattice::from_columns(cols);
}

inline multitile::Polytope to_polytope(const RPolytope& p) {
  std::vector<multitile::Facet> facets;
  for (std::size_t i = 0; i < p.normals.size(); ++i) {
    facets.push_back({to_vec(p.normals[i]), multitile::Scalar(p.offsets[i])});
  }
  return multitile::Polytope::from_facets(facets);
}

// The finite window of coset points t + L z with z in [-radius, radius]^d.
inline multitile::WindowMultiset coset_window(const multitile::Coset& c, std::int64_t radius) {
  multitile::WindowMultiset w;
  scan_cube(c.dimension(), radius, [&](const std::vector<Integer>& z) {
    w.points.push_back({c.translation + c.lattice.point(z), c.weight});
  });
  return w;
}

inline multitile::WindowMultiset window_of(const multitile::QuasiPeriodicSet& q,
                                           std::int64_t radius) {
  multitile::WindowMultiset w;
  for (const auto& c : q.cosets) {
    auto part = coset_window(c, radius);
    w.points.insert(w.points.end(), part.points.begin(), part.points.end());
  }
  return w;
}

// A well-conditioned random rational lattice basis with small entries.
inline RMat random_basis(Rng& rng, std::size_t d) {
  for (;;) {
    RMat b(d, RVec(d));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        b[j][i] = i == j ? rng.rational(1, 2, 4) : rng.rational(-1, 1, 4) / 8;
      }
    // diagonal dominance keeps the basis nonsingular and the box tight
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j) {
      Rational off = 0;
      for (std::size_t i = 0; i < d; ++i)
        if (i != j) off += abs(b[j][i]);
      ok = abs(b[j][j]) > off;
    }
    if (ok) return b;
  }
}

// Radius R such that every integer c with t + B c in [lo, hi] has max |c_k| <= R,
// from |c|_1 <= |x - t|_1 / gap for a column diagonally dominant B with
// gap = min_j (|b_jj| - sum_{i != j} |b_ij|).
inline std::int64_t coordinate_radius(const RMat& b, const RVec& t, const RVec& lo,
                                      const RVec& hi) {
  Rational gap = -1;
  for (std::size_t j = 0; j < b.size(); ++j) {
    Rational g = abs(b[j][j]);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (i != j) g -= abs(b[j][i]);
    if (gap < 0 || g < gap) gap = g;
  }
  Rational span = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    span += std::max(abs(lo[k] - t[k]), abs(hi[k] - t[k]));
  }
  Rational r = span / gap;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return c.get_si();
}

}  // namespace oracle
