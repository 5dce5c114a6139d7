#include "multitile/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace multitile {

namespace {

std::atomic<unsigned> g_precision_cap{1024};

constexpr unsigned kInitialBits = 32;

Rational pow2_inverse(unsigned bits) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), bits);
  return r;
}

// Splits n > 0 into s^2 * f with f squarefree. Trial division is enough for
// the radicands this library is meant for.
std::pair<Integer, Integer> square_split(Integer n) {
  Integer s = 1;
  Integer f = 1;
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    Integer pp = Integer(p) * p;
    if (pp > n) break;
    unsigned count = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++count;
    }
    for (unsigned i = 0; i + 1 < count; i += 2) s *= p;
    if (count % 2 == 1) f *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      s *= root;
    } else {
      // A leftover without prime factors below the trial limit is squarefree
      // only when it has at most two prime factors.
      Integer limit = Integer(kTrialLimit) * kTrialLimit * kTrialLimit;
      if (n >= limit) {
        throw InvalidInput("radicand too large to canonicalise: " + n.get_str());
      }
      f *= n;
    }
  }
  return {s, f};
}

}  // namespace

unsigned precision_cap_bits() { return g_precision_cap.load(); }
void set_precision_cap_bits(unsigned bits) {
  if (bits < kInitialBits) throw InvalidInput("precision cap must be at least 32 bits");
  g_precision_cap.store(bits);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw InvalidInput("not a rational number: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  r.get_num() = Integer(num);
  r.get_den() = Integer(den);
  if (r.get_den() == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// ---------------------------------------------------------------- Generator

struct Generator::Data {
  Kind kind;
  Integer radicand;
  std::string name;
  Refiner refiner;
};

Generator Generator::quadratic_surd(const Integer& radicand) {
  if (radicand <= 1) throw InvalidInput("quadratic surd radicand must exceed 1");
  auto data = std::make_shared<Data>();
  data->kind = Kind::QuadraticSurd;
  data->radicand = radicand;
  return Generator(std::move(data));
}

Generator Generator::symbolic(std::string name, std::vector<Interval> schedule) {
  if (schedule.empty()) throw InvalidInput("symbolic generator '" + name + "' has no interval");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const Interval& iv = schedule[i];
    if (!(iv.lo < iv.hi)) {
      throw InvalidInput("symbolic generator '" + name + "': interval must satisfy lo < hi");
    }
    if (i > 0) {
      const Interval& prev = schedule[i - 1];
      if (iv.lo < prev.lo || iv.hi > prev.hi || !(iv.width() < prev.width())) {
        throw InvalidInput("symbolic generator '" + name +
                           "': refinements must be nested and strictly shrinking");
      }
    }
  }
  Interval initial = schedule.front();
  auto refiner = [schedule = std::move(schedule)](unsigned bits) {
    Rational target = pow2_inverse(bits);
    for (const Interval& iv : schedule) {
      if (iv.width() <= target) return iv;
    }
    return schedule.back();
  };
  return symbolic(std::move(name), std::move(initial), std::move(refiner));
}

Generator Generator::symbolic(std::string name, Interval initial, Refiner refiner) {
  if (name.empty()) throw InvalidInput("symbolic generator needs a name");
  if (!(initial.lo < initial.hi)) {
    throw InvalidInput("symbolic generator '" + name + "': interval must satisfy lo < hi");
  }
  auto data = std::make_shared<Data>();
  data->kind = Kind::Symbolic;
  data->name = std::move(name);
  data->refiner = std::move(refiner);
  return Generator(std::move(data));
}

Generator::Kind Generator::kind() const { return data_->kind; }
const Integer& Generator::radicand() const { return data_->radicand; }
const std::string& Generator::name() const { return data_->name; }

std::string Generator::key() const {
  return is_surd() ? "sqrt:" + data_->radicand.get_str() : "sym:" + data_->name;
}

Interval Generator::enclose(unsigned bits) const {
  if (is_surd()) {
    // floor(sqrt(r * 4^bits)) / 2^bits <= sqrt(r) < (that + 1) / 2^bits
    Integer scaled = data_->radicand;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational step = pow2_inverse(bits);
    Rational lo = Rational(root) * step;
    return {lo, lo + step};
  }
  return data_->refiner(bits);
}

bool operator==(const Generator& a, const Generator& b) {
  if (a.data_ == b.data_) return true;
  if (a.kind() != b.kind()) return false;
  return a.is_surd() ? a.radicand() == b.radicand() : a.name() == b.name();
}

std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
  if (a.kind() != b.kind()) {
    return a.is_surd() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_surd()) {
    int c = cmp(a.radicand(), b.radicand());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return a.name() <=> b.name();
}

// ------------------------------------------------------------------- Scalar

Scalar Scalar::sqrt(const Rational& r) {
  if (sgn(r) < 0) throw InvalidInput("square root of a negative number");
  if (sgn(r) == 0) return Scalar();
  // sqrt(p/q) = sqrt(p*q)/q = s*sqrt(f)/q
  Integer pq = r.get_num() * r.get_den();
  auto [s, f] = square_split(pq);
  Rational coefficient(s, r.get_den());
  coefficient.canonicalize();
  if (f == 1) return Scalar(coefficient);
  return of(Generator::quadratic_surd(f), coefficient);
}

Scalar Scalar::of(const Generator& g, const Rational& coefficient) {
  Scalar s;
  if (sgn(coefficient) != 0) s.terms_.push_back({g, coefficient});
  return s;
}

Rational Scalar::coefficient(const Generator& g) const {
  for (const Term& t : terms_) {
    if (t.generator == g) return t.coefficient;
  }
  return 0;
}

bool Scalar::is_integer() const { return is_rational() && rational_.get_den() == 1; }

bool Scalar::field_mode() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().generator.is_surd());
}

std::optional<Generator> Scalar::surd() const {
  if (terms_.size() == 1 && terms_.front().generator.is_surd()) return terms_.front().generator;
  return std::nullopt;
}

void Scalar::scale(const Rational& factor) {
  if (sgn(factor) == 0) {
    rational_ = 0;
    terms_.clear();
    return;
  }
  rational_ *= factor;
  for (Term& t : terms_) t.coefficient *= factor;
}

void Scalar::normalize() {
  std::erase_if(terms_, [](const Term& t) { return sgn(t.coefficient) == 0; });
}

Scalar& Scalar::operator+=(const Scalar& other) {
  rational_ += other.rational_;
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->generator < b->generator)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->generator < a->generator) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (sgn(c) != 0) merged.push_back({a->generator, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.rational_ = -s.rational_;
  for (Term& t : s.terms_) t.coefficient = -t.coefficient;
  return s;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (other.is_rational()) {
    scale(other.rational_);
    return *this;
  }
  if (is_rational()) {
    Rational factor = rational_;
    *this = other;
    scale(factor);
    return *this;
  }
  auto mine = surd();
  auto theirs = other.surd();
  if (!mine || !theirs || !(*mine == *theirs)) {
    throw FieldClosureViolation("product of " + to_string(*this) + " and " + to_string(other) +
                                " leaves the single quadratic field");
  }
  // (a + b√r)(c + d√r) = (ac + bdr) + (ad + bc)√r
  const Rational& a = rational_;
  const Rational& b = terms_.front().coefficient;
  const Rational& c = other.rational_;
  const Rational& d = other.terms_.front().coefficient;
  Rational r(mine->radicand());
  Rational rat = a * c + b * d * r;
  Rational irr = a * d + b * c;
  rational_ = rat;
  terms_.front().coefficient = irr;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (other.is_zero()) throw DivisionByZero("division by zero");
  if (other.is_rational()) {
    scale(1 / other.rational_);
    return *this;
  }
  auto theirs = other.surd();
  auto mine = surd();
  if (!theirs || !(is_rational() || (mine && *mine == *theirs))) {
    throw FieldClosureViolation("quotient of " + to_string(*this) + " by " + to_string(other) +
                                " leaves the single quadratic field");
  }
  // 1/(c + d√r) = (c - d√r) / (c² - d²r)
  const Rational& c = other.rational_;
  const Rational& d = other.terms_.front().coefficient;
  Rational norm = c * c - d * d * Rational(theirs->radicand());
  Scalar conjugate = Scalar(c) - Scalar::of(*theirs, d);
  *this *= conjugate;
  scale(1 / norm);
  return *this;
}

int Scalar::sign() const {
  if (terms_.empty()) return sgn(rational_);
  if (field_mode()) {
    // a + b√r
    int sa = sgn(rational_);
    int sb = sgn(terms_.front().coefficient);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a² with b²r.
    Rational b = terms_.front().coefficient;
    int c = cmp(rational_ * rational_, b * b * Rational(terms_.front().generator.radicand()));
    return c > 0 ? sa : sb;
  }
  const unsigned cap = precision_cap_bits();
  for (unsigned bits = kInitialBits;; bits = std::min(bits * 2, cap)) {
    Interval iv = enclose(bits);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
    if (bits >= cap) {
      throw SignIndeterminate("cannot separate " + to_string(*this) + " from zero at " +
                              std::to_string(cap) + " bits");
    }
  }
}

Integer Scalar::floor() const {
  if (is_rational()) return floor_of(rational_);
  Interval iv = enclose(kInitialBits);
  Integer n = floor_of(iv.lo);
  while ((*this - Scalar(n)).sign() < 0) --n;
  while ((*this - Scalar(Integer(n + 1))).sign() >= 0) ++n;
  return n;
}

Integer Scalar::ceil() const {
  Integer n = floor();
  if (!(*this == Scalar(n))) ++n;
  return n;
}

Interval Scalar::enclose(unsigned bits) const {
  Interval out{rational_, rational_};
  for (const Term& t : terms_) {
    Interval g = t.generator.enclose(bits);
    if (sgn(t.coefficient) > 0) {
      out.lo += t.coefficient * g.lo;
      out.hi += t.coefficient * g.hi;
    } else {
      out.lo += t.coefficient * g.hi;
      out.hi += t.coefficient * g.lo;
    }
  }
  return out;
}

Interval Scalar::to_interval(const Rational& precision) const {
  if (sgn(precision) <= 0) throw InvalidInput("precision must be positive");
  if (is_rational()) return {rational_, rational_};
  bool symbolic = std::any_of(terms_.begin(), terms_.end(),
                              [](const Term& t) { return !t.generator.is_surd(); });
  const unsigned cap = precision_cap_bits();
  for (unsigned bits = kInitialBits;; bits *= 2) {
    Interval iv = enclose(bits);
    if (iv.width() <= precision) return iv;
    if (symbolic && bits >= cap) {
      throw PrecisionUnreachable("cannot enclose " + to_string(*this) + " within width " +
                                 precision.get_str());
    }
  }
}

double Scalar::to_double() const {
  if (is_rational()) return rational_.get_d();
  Interval iv = enclose(64);
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return cmp(a.rational_part(), b.rational_part());
  return (a - b).sign();
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("dimension mismatch in dot product");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    s += a[i] * b[i];
  }
  return s;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("dimension mismatch in vector sum");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("dimension mismatch in vector difference");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec operator-(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Vec scaled(const Vec& a, const Scalar& factor) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * factor;
  return out;
}

bool all_rational(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_rational(); });
}

std::string to_string(const Scalar& x) {
  std::string out;
  if (sgn(x.rational_part()) != 0 || x.terms().empty()) out = x.rational_part().get_str();
  for (const auto& t : x.terms()) {
    Rational c = t.coefficient;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (c != 1) out += c.get_str() + "*";
    out += t.generator.key();
  }
  return out;
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::string to_decimal(const Scalar& x, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, x.to_double());
  std::string s(buffer);
  if (s == "-0") s = "0";
  return s;
}

// ------------------------------------------------------------ GeneratorTable

bool operator==(const SymbolicDeclaration& a, const SymbolicDeclaration& b) {
  if (a.name != b.name || a.schedule.size() != b.schedule.size()) return false;
  for (std::size_t i = 0; i < a.schedule.size(); ++i) {
    if (a.schedule[i].lo != b.schedule[i].lo || a.schedule[i].hi != b.schedule[i].hi) {
      return false;
    }
  }
  return true;
}

void GeneratorTable::declare(const GeneratorDeclaration& declaration) {
  std::string key;
  Scalar value;
  if (const auto* surd = std::get_if<SurdDeclaration>(&declaration)) {
    if (sgn(surd->radicand) <= 0) throw InvalidInput("surd radicand must be positive");
    value = Scalar::sqrt(surd->radicand);
    if (value.is_rational()) {
      throw InvalidInput("sqrt(" + surd->radicand.get_str() + ") is rational");
    }
    key = "sqrt:" + surd->radicand.get_str();
  } else {
    const auto& sym = std::get<SymbolicDeclaration>(declaration);
    value = Scalar::of(Generator::symbolic(sym.name, sym.schedule));
    key = "sym:" + sym.name;
  }
  for (const auto& [k, v] : keys_) {
    if (k == key) throw InvalidInput("generator '" + key + "' declared twice");
  }
  keys_.emplace_back(key, value);
  // The canonical key may differ from the declared one (sqrt:8 -> 2*sqrt:2).
  std::string canonical = value.terms().front().generator.key();
  if (canonical != key) {
    bool seen = std::any_of(keys_.begin(), keys_.end(),
                            [&](const auto& kv) { return kv.first == canonical; });
    if (!seen) keys_.emplace_back(canonical, Scalar::of(value.terms().front().generator));
  }
  declarations_.push_back(declaration);
}

Scalar GeneratorTable::resolve(std::string_view key) const {
  for (const auto& [k, v] : keys_) {
    if (k == key) return v;
  }
  if (implicit_surds_ && key.starts_with("sqrt:")) {
    std::string_view radicand = key.substr(5);
    if (radicand.size() >= 2 && radicand.front() == '(' && radicand.back() == ')') {
      radicand = radicand.substr(1, radicand.size() - 2);
    }
    Rational r = parse_rational(radicand);
    if (sgn(r) <= 0) throw InvalidInput("surd radicand must be positive");
    return Scalar::sqrt(r);
  }
  if (key.starts_with("sqrt:")) {
    // Accept any declared surd whose canonical form matches.
    std::string_view radicand = key.substr(5);
    if (radicand.size() >= 2 && radicand.front() == '(' && radicand.back() == ')') {
      radicand = radicand.substr(1, radicand.size() - 2);
    }
    Rational r = parse_rational(radicand);
    if (sgn(r) > 0) {
      Scalar s = Scalar::sqrt(r);
      if (!s.is_rational()) {
        std::string canonical = s.terms().front().generator.key();
        for (const auto& [k, v] : keys_) {
          if (k == canonical) return s;
        }
      }
    }
  }
  throw InvalidInput("undeclared generator '" + std::string(key) + "'");
}

namespace {

struct ExpressionParser {
  std::string_view text;
  const GeneratorTable& table;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& what) {
    throw InvalidInput("cannot parse scalar '" + std::string(text) + "': " + what);
  }

  // factor := integer | (sqrt|sym):token
  Scalar factor(bool& is_number) {
    skip_space();
    if (pos >= text.size()) fail("unexpected end");
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      is_number = true;
      return Scalar(Integer(std::string(text.substr(start, pos - start))));
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view kind = text.substr(start, pos - start);
    if ((kind != "sqrt" && kind != "sym") || pos >= text.size() || text[pos] != ':') {
      fail("expected a number, sqrt:R or sym:name");
    }
    ++pos;
    std::size_t token_start = pos;
    if (kind == "sqrt" && pos < text.size() && text[pos] == '(') {
      while (pos < text.size() && text[pos] != ')') ++pos;
      if (pos >= text.size()) fail("unbalanced parenthesis");
      ++pos;
    } else if (kind == "sqrt") {
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    } else {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
    }
    if (pos == token_start) fail("empty generator name");
    is_number = false;
    return table.resolve(text.substr(start, pos - start));
  }

  Scalar term() {
    bool is_number = false;
    Scalar value = factor(is_number);
    for (;;) {
      skip_space();
      if (pos >= text.size()) break;
      char op = text[pos];
      if (op != '*' && op != '/') break;
      ++pos;
      bool rhs_number = false;
      Scalar rhs = factor(rhs_number);
      if (op == '*') {
        value *= rhs;
      } else {
        if (!rhs_number) fail("division is only allowed by integers");
        if (rhs.is_zero()) fail("division by zero");
        value /= rhs;
      }
    }
    return value;
  }

  Scalar expression() {
    Scalar total;
    bool first = true;
    for (;;) {
      skip_space();
      int sign = 1;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        break;
      }
      Scalar t = term();
      if (sign < 0) total -= t; else total += t;
      first = false;
      if (at_end()) break;
    }
    if (!at_end()) fail("trailing characters");
    return total;
  }
};

}  // namespace

Scalar GeneratorTable::parse_expression(std::string_view text) const {
  ExpressionParser parser{text, *this};
  return parser.expression();
}

}  // namespace multitile
