#include "multitile/refiner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace multitile {

OffsetDecomposition decompose_offset(const Lattice& period, const Vec& t1, const Vec& t2) {
  if (!period.is_rational()) throw InvalidInput("the period lattice must have a rational basis");
  if (t1.size() != period.dimension() || t2.size() != period.dimension()) {
    throw InvalidInput("offset dimension mismatch");
  }
  OffsetDecomposition out;
  out.coordinates = lattice_coords(period, t2 - t1);
  for (const Scalar& c : out.coordinates) {
    for (const auto& t : c.terms()) {
      if (std::find(out.generators.begin(), out.generators.end(), t.generator) ==
          out.generators.end()) {
        out.generators.push_back(t.generator);
      }
    }
  }
  std::sort(out.generators.begin(), out.generators.end());
  return out;
}

Integer denominator_lcm(const OffsetDecomposition& decomposition) {
  Integer n = 1;
  for (const Scalar& c : decomposition.coordinates) {
    n = lcm_of(n, c.rational_part().get_den());
    for (const auto& t : c.terms()) n = lcm_of(n, t.coefficient.get_den());
  }
  return n;
}

RefinementResult theorem_1_4_pipeline(const HalfOpenPolytope& p, const Lattice& period,
                                      const Vec& t1, const Vec& t2, std::int64_t w1,
                                      std::int64_t w2, const Sampled& sampled,
                                      bool exact_if_available) {
  if (w1 < 1 || w2 < 1) throw InvalidInput("coset weights must be positive");
  OffsetDecomposition dec = decompose_offset(period, t1, t2);
  Integer n = denominator_lcm(dec);
  Coset candidate{refine_lattice(period, n), t1, n == 1 ? w1 + w2 : 1};
  QuasiPeriodicSet q{{candidate}};
  VerificationMode mode = exact_if_available ? preferred_mode(p, q, sampled)
                                             : VerificationMode(sampled);
  VerificationResult verification = verify_constant_multiplicity(p, q, mode);
  return RefinementResult{std::move(n), std::move(dec), std::move(candidate),
                          std::move(verification)};
}

bool near_integer_vector(const Vec& x, const Rational& eps) {
  const Scalar lo(eps), hi(Rational(1) - eps);
  for (const Scalar& c : x) {
    Scalar frac = c - Scalar(c.floor());
    if (!(frac < lo || frac > hi)) return false;
  }
  return true;
}

std::optional<std::int64_t> weyl_search(const Vec& a, const Rational& eps, std::int64_t jmax) {
  if (sgn(eps) <= 0 || eps >= Rational(1, 2)) throw InvalidInput("eps must lie in (0, 1/2)");
  if (jmax < 0) throw InvalidInput("jmax must be nonnegative");
  for (std::int64_t j = 0; j <= jmax; ++j) {
    if (near_integer_vector(scaled(a, Scalar(Integer(static_cast<long>(2 * j + 1)))), eps)) {
      return j;
    }
  }
  return std::nullopt;
}

double equidistribution_statistic(const Vec& a, const std::vector<std::int64_t>& frequency,
                                  std::int64_t terms) {
  if (frequency.size() != a.size()) throw InvalidInput("frequency length mismatch");
  if (std::all_of(frequency.begin(), frequency.end(), [](std::int64_t h) { return h == 0; })) {
    throw InvalidInput("frequency must be nonzero");
  }
  if (terms < 1) throw InvalidInput("number of terms must be positive");
  Scalar phase(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    phase += a[k] * Scalar(Integer(static_cast<long>(2 * frequency[k])));
  }
  const double theta = (phase - Scalar(phase.floor())).to_double();
  std::complex<double> sum = 0;
  for (std::int64_t n = 1; n <= terms; ++n) {
    double turns = std::fmod(static_cast<double>(n) * theta, 1.0);
    sum += std::polar(1.0, 2 * std::numbers::pi * turns);
  }
  return std::abs(sum) / static_cast<double>(terms);
}

}  // namespace multitile
