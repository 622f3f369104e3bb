#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace weyl {

using Rational = mpq_class;
using Integer = mpz_class;

/** Base field descriptor: Q when d == 0, else the quadratic field Q(sqrt(d)). */
class FieldContext {
 public:
  FieldContext() = default;
  explicit FieldContext(unsigned long d) : d_(d) {
    if (d == 1 || (d != 0 && !is_squarefree(d)))
      throw std::invalid_argument("FieldContext: d must be 0 or squarefree >= 2");
  }

  unsigned long d() const { return d_; }
  bool rational_only() const { return d_ == 0; }
  friend bool operator==(const FieldContext&, const FieldContext&) = default;

  static bool is_squarefree(unsigned long d) {
    for (unsigned long k = 2; k * k <= d; ++k)
      if (d % (k * k) == 0) return false;
    return true;
  }

 private:
  unsigned long d_ = 0;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer f = 1;
  for (unsigned long k = 2; k <= n; ++k) f *= static_cast<long>(k);
  return f;
}

/**
 * Element a + b*sqrt(d) of Q(sqrt(d)), components always in lowest terms.
 *
 * A value with b == 0 is field-agnostic and combines with any quadratic
 * field; two values with sqrt parts from different fields refuse to mix.
 */
class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(0) {}
  Scalar(long v) : a_(v, 1), b_(0), d_(0) {}  // NOLINT: implicit by design
  Scalar(const Rational& v) : a_(v), b_(0), d_(0) {}
  Scalar(const Rational& a, const Rational& b, const FieldContext& field)
      : a_(a), b_(b), d_(field.d()) {
    if (d_ == 0 && b_ != 0)
      throw std::domain_error("Scalar: sqrt part in a plain rational field");
    if (b_ == 0) d_ = 0;  // rational values stay field-agnostic
  }

  static Scalar sqrt_of(const FieldContext& field) {
    if (field.rational_only())
      throw std::domain_error("Scalar::sqrt_of: field has no adjoined root");
    return Scalar(Rational(0), Rational(1), field);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  unsigned long d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return b_ == 0 && a_ == 1; }
  bool is_rational() const { return b_ == 0; }

  Rational as_rational() const {
    if (b_ != 0) throw std::domain_error("Scalar: not a rational value");
    return a_;
  }

  long as_long() const {
    Rational r = as_rational();
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
      throw std::domain_error("Scalar: not a small integer");
    return r.get_num().get_si();
  }

  bool is_integer() const { return b_ == 0 && a_.get_den() == 1; }

  Scalar conjugate() const {
    Scalar r = *this;
    r.b_ = -r.b_;
    return r;
  }

  /// a^2 - d*b^2; zero exactly when the value is zero (d squarefree, != 1).
  Rational norm() const { return a_ * a_ - Rational(static_cast<long>(d_)) * b_ * b_; }

  Scalar operator-() const {
    Scalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    unsigned long d = joined_field(x, y);
    return from_parts(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    unsigned long d = joined_field(x, y);
    return from_parts(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    unsigned long d = joined_field(x, y);
    Rational root(static_cast<long>(d));
    return from_parts(x.a_ * y.a_ + root * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    Rational n = norm();
    return from_parts(a_ / n, -b_ / n, d_);
  }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return x.b_ == 0 || x.d_ == y.d_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Total order on the component pair (a, b); used for canonical term order,
  /// not for the numeric order of a + b*sqrt(d).
  int compare_key(const Scalar& y) const {
    int c = cmp(a_, y.a_);
    if (c != 0) return c;
    return cmp(b_, y.b_);
  }
  friend bool operator<(const Scalar& x, const Scalar& y) { return x.compare_key(y) < 0; }

 private:
  static Scalar from_parts(Rational a, Rational b, unsigned long d) {
    Scalar r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.d_ = r.b_ == 0 ? 0 : d;
    return r;
  }

  static unsigned long joined_field(const Scalar& x, const Scalar& y) {
    if (x.d_ == y.d_) return x.d_;
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    throw std::domain_error("Scalar: mixed field contexts (sqrt(" + std::to_string(x.d_) +
                            ") vs sqrt(" + std::to_string(y.d_) + "))");
  }

  Rational a_, b_;
  unsigned long d_;
};

/// x(x-1)...(x-j+1); empty product for j == 0.
inline Scalar falling_factorial(const Scalar& x, unsigned long j) {
  Scalar p(1);
  for (unsigned long k = 0; k < j; ++k) p *= x - Scalar(static_cast<long>(k));
  return p;
}

/// Generalized binomial x(x-1)...(x-j+1)/j! for a field element x.
inline Scalar binomial(const Scalar& x, unsigned long j) {
  return falling_factorial(x, j) * Scalar(Rational(1) / Rational(factorial(j)));
}

/// Ordinary integer binomial, 0 when k > n.
inline Integer binomial_int(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= static_cast<long>(n - i);
    r /= static_cast<long>(i + 1);
  }
  return r;
}

// --- canonical textual form: "p/q" and "p/q+r/s*sqrt(d)" -------------------

inline std::string format_rational(const Rational& r) { return r.get_str(); }

inline std::string format_scalar(const Scalar& s) {
  if (s.is_rational()) return format_rational(s.rational_part());
  std::string root = "*sqrt(" + std::to_string(s.d()) + ")";
  std::string tail;
  if (s.sqrt_part() < 0)
    tail = "-" + format_rational(-s.sqrt_part()) + root;
  else
    tail = (s.rational_part() == 0 ? "" : "+") + format_rational(s.sqrt_part()) + root;
  if (s.rational_part() == 0) return tail;
  return format_rational(s.rational_part()) + tail;
}

namespace detail {

inline void skip_ws(const std::string& t, size_t& i) {
  while (i < t.size() && (t[i] == ' ' || t[i] == '\t')) ++i;
}

inline Rational parse_rational_at(const std::string& t, size_t& i) {
  skip_ws(t, i);
  size_t start = i;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
  size_t digits = i;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i == digits) throw std::invalid_argument("scalar: expected number at position " +
                                               std::to_string(start) + " in '" + t + "'");
  Integer num(t.substr(start, i - start));
  Integer den = 1;
  if (i < t.size() && t[i] == '/') {
    ++i;
    size_t dstart = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == dstart) throw std::invalid_argument("scalar: expected denominator in '" + t + "'");
    den = Integer(t.substr(dstart, i - dstart));
    if (den == 0) throw std::invalid_argument("scalar: zero denominator in '" + t + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline unsigned long parse_sqrt_at(const std::string& t, size_t& i) {
  // caller saw "sqrt"; parse "(<uint>)"
  skip_ws(t, i);
  if (i >= t.size() || t[i] != '(')
    throw std::invalid_argument("scalar: expected '(' after sqrt in '" + t + "'");
  ++i;
  size_t dstart = i;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i == dstart) throw std::invalid_argument("scalar: expected integer inside sqrt in '" + t + "'");
  unsigned long d = std::stoul(t.substr(dstart, i - dstart));
  skip_ws(t, i);
  if (i >= t.size() || t[i] != ')')
    throw std::invalid_argument("scalar: expected ')' after sqrt argument in '" + t + "'");
  ++i;
  return d;
}

}  // namespace detail

/**
 * Parse "p/q", "p/q+r/s*sqrt(d)", "r/s*sqrt(d)", "sqrt(d)" and the
 * sign variants. The sqrt radicand must match the given field.
 */
inline Scalar parse_scalar(const std::string& text, const FieldContext& field) {
  size_t i = 0;
  Rational a(0), b(0);
  bool any = false;
  detail::skip_ws(text, i);
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      detail::skip_ws(text, i);
    } else if (any) {
      throw std::invalid_argument("scalar: expected '+' or '-' at position " + std::to_string(i) +
                                  " in '" + text + "'");
    }
    Rational coeff(1);
    bool have_coeff = false;
    if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])))) {
      coeff = detail::parse_rational_at(text, i);
      have_coeff = true;
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == '*') {
        ++i;
        detail::skip_ws(text, i);
      } else {
        a += sign * coeff;
        any = true;
        detail::skip_ws(text, i);
        continue;
      }
    }
    if (text.compare(i, 4, "sqrt") == 0) {
      i += 4;
      unsigned long d = detail::parse_sqrt_at(text, i);
      if (field.rational_only() || d != field.d())
        throw std::invalid_argument("scalar: sqrt(" + std::to_string(d) +
                                    ") does not belong to the session field");
      b += sign * coeff;
      any = true;
    } else if (have_coeff) {
      throw std::invalid_argument("scalar: expected sqrt(...) after '*' in '" + text + "'");
    } else {
      throw std::invalid_argument("scalar: unexpected character at position " +
                                  std::to_string(i) + " in '" + text + "'");
    }
    detail::skip_ws(text, i);
  }
  if (!any) throw std::invalid_argument("scalar: empty input");
  if (b == 0) return Scalar(a);
  return Scalar(a, b, field);
}

}  // namespace weyl
