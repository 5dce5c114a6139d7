#pragma once

/**
 * Exact scalars.
 *
 * A Scalar is a rational number plus rational coefficients over a finite set
 * of declared irrational generators. Three tiers are distinguished:
 *
 *   - pure rationals (no generator terms),
 *   - field mode: at most one quadratic surd and no symbolic generator, which
 *     is closed under all four field operations,
 *   - general: a Q-linear combination of several generators, closed only
 *     under addition, subtraction and rational scaling.
 *
 * Signs are exact in field mode and obtained by interval refinement
 * otherwise (raising SignIndeterminate at the precision cap).
 */

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "multitile/errors.hpp"

namespace multitile {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);
Integer lcm_of(const Integer& a, const Integer& b);

// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Precision cap (in bits) for interval refinement. Defaults to 1024 and is
/// process-wide.
unsigned precision_cap_bits();
void set_precision_cap_bits(unsigned bits);

/**
 * An irrational basis element: either sqrt(r) for a squarefree integer r > 1,
 * or a named symbolic real with certified enclosing intervals.
 *
 * Generators compare by identity key: quadratic surds by radicand, symbolic
 * generators by name, and every surd orders before every symbolic generator.
 */
class Generator {
 public:
  enum class Kind { QuadraticSurd, Symbolic };

  // Returns the best enclosing interval available for the requested number of
  // bits; it may be wider than 2^-bits when the source cannot refine further.
  using Refiner = std::function<Interval(unsigned bits)>;

  // `radicand` must be a squarefree integer > 1 (see Scalar::sqrt for the
  // canonicalising entry point).
  static Generator quadratic_surd(const Integer& radicand);

  // Symbolic generator from a schedule of strictly shrinking nested intervals.
  static Generator symbolic(std::string name, std::vector<Interval> schedule);
  static Generator symbolic(std::string name, Interval initial, Refiner refiner);

  Kind kind() const;
  bool is_surd() const { return kind() == Kind::QuadraticSurd; }
  const Integer& radicand() const;
  const std::string& name() const;

  // "sqrt:2" or "sym:alpha".
  std::string key() const;

  Interval enclose(unsigned bits) const;

  friend bool operator==(const Generator& a, const Generator& b);
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b);

 private:
  struct Data;
  explicit Generator(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

class Scalar {
 public:
  struct Term {
    Generator generator;
    Rational coefficient;

    friend bool operator==(const Term&, const Term&) = default;
  };

  Scalar() = default;
  Scalar(int value) : rational_(value) {}  // NOLINT: implicit by design of the numeric tower
  Scalar(long value) : rational_(value) {}  // NOLINT
  Scalar(const Rational& value) : rational_(value) { rational_.canonicalize(); }  // NOLINT
  Scalar(const Integer& value) : rational_(value) {}  // NOLINT

  // sqrt(r) for rational r >= 0, canonicalised to c*sqrt(f) with f squarefree.
  static Scalar sqrt(const Rational& r);
  static Scalar of(const Generator& g, const Rational& coefficient = 1);

  const Rational& rational_part() const { return rational_; }
  std::span<const Term> terms() const { return terms_; }
  Rational coefficient(const Generator& g) const;

  bool is_rational() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && sgn(rational_) == 0; }
  bool is_integer() const;
  bool field_mode() const;
  // The quadratic surd of a field-mode scalar, if it has one.
  std::optional<Generator> surd() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Coefficient-wise equality.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rational_ == b.rational_ && a.terms_ == b.terms_;
  }

  int sign() const;
  Integer floor() const;
  Integer ceil() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  // Interval containing the value with width <= 2^-bits when reachable.
  Interval enclose(unsigned bits) const;
  // Interval containing the value with width <= precision.
  Interval to_interval(const Rational& precision) const;
  double to_double() const;

 private:
  void scale(const Rational& factor);
  void normalize();

  Rational rational_{0};
  std::vector<Term> terms_;  // sorted by generator, no zero coefficients
};

int compare(const Scalar& a, const Scalar& b);
inline bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

inline int sign(const Scalar& x) { return x.sign(); }
inline int sign(const Rational& x) { return sgn(x); }
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline int sign(const Integer& x) { return sgn(x); }

using Vec = std::vector<Scalar>;

Scalar dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec scaled(const Vec& a, const Scalar& factor);
bool all_rational(const Vec& v);

// Human-readable expression form, e.g. "1/2 + 1/2*sqrt:2". Round-trips through
// GeneratorTable::parse_expression.
std::string to_string(const Scalar& x);
std::string to_string(const Vec& v);

// Decimal approximation with the given number of significant digits.
std::string to_decimal(const Scalar& x, int significant_digits = 12);

struct SurdDeclaration {
  Rational radicand;
  friend bool operator==(const SurdDeclaration&, const SurdDeclaration&) = default;
};
struct SymbolicDeclaration {
  std::string name;
  std::vector<Interval> schedule;
  friend bool operator==(const SymbolicDeclaration& a, const SymbolicDeclaration& b);
};
using GeneratorDeclaration = std::variant<SurdDeclaration, SymbolicDeclaration>;

/**
 * The per-problem set of declared generators, used when parsing scalars.
 */
class GeneratorTable {
 public:
  // When `implicit_surds` is set, "sqrt:N" tokens need no prior declaration.
  explicit GeneratorTable(bool implicit_surds = false) : implicit_surds_(implicit_surds) {}

  void declare(const GeneratorDeclaration& declaration);

  // Resolves "sqrt:R" or "sym:name" to the scalar it denotes.
  Scalar resolve(std::string_view key) const;

  // Parses sums of terms such as "sqrt:2/2", "1/2 + 3*sqrt:5", "-sym:alpha/4".
  Scalar parse_expression(std::string_view text) const;

  const std::vector<GeneratorDeclaration>& declarations() const { return declarations_; }

 private:
  bool implicit_surds_;
  std::vector<GeneratorDeclaration> declarations_;
  std::vector<std::pair<std::string, Scalar>> keys_;
};

}  // namespace multitile
