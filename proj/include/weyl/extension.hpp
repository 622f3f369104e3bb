#pragma once

#include <stdexcept>
#include <utility>

#include "weyl/algebra.hpp"

namespace weyl {

/**
 * Element of the one-dimensional central extension of the rank-one algebra:
 * a body plus a multiple of the central generator C.
 */
class ExtendedElement {
 public:
  explicit ExtendedElement(AlgebraElement body, Scalar central = Scalar(0))
      : body_(std::move(body)), central_(std::move(central)) {
    if (body_.context()->n() != 1)
      throw std::domain_error("ExtendedElement: the central extension exists only in rank one");
  }

  static ExtendedElement central_generator(const GroupContextPtr& ctx) {
    return ExtendedElement(AlgebraElement::zero(ctx), Scalar(1));
  }

  const AlgebraElement& body() const { return body_; }
  const Scalar& central() const { return central_; }
  bool is_zero() const { return body_.is_zero() && central_.is_zero(); }

  friend ExtendedElement operator+(const ExtendedElement& x, const ExtendedElement& y) {
    return ExtendedElement(x.body_ + y.body_, x.central_ + y.central_);
  }
  friend ExtendedElement operator-(const ExtendedElement& x, const ExtendedElement& y) {
    return ExtendedElement(x.body_ - y.body_, x.central_ - y.central_);
  }
  friend ExtendedElement operator*(const Scalar& c, const ExtendedElement& x) {
    return ExtendedElement(c * x.body_, c * x.central_);
  }
  friend bool operator==(const ExtendedElement& x, const ExtendedElement& y) {
    return x.body_ == y.body_ && x.central_ == y.central_;
  }
  friend bool operator!=(const ExtendedElement& x, const ExtendedElement& y) {
    return !(x == y);
  }

 private:
  AlgebraElement body_;
  Scalar central_;
};

/**
 * Defining 2-cocycle on falling-basis words (rank one):
 *
 *   psi(t^a [D]_m, t^b [D]_k) = delta_{a,-b} (-1)^m m! k! C(a+m, m+k+1).
 */
inline Scalar cocycle(const FallingElement& x, const FallingElement& y) {
  Scalar total(0);
  for (const auto& [xm, xc] : x.terms()) {
    for (const auto& [ym, yc] : y.terms()) {
      if (!(xm.alpha + ym.alpha).is_zero()) continue;
      unsigned long m = xm.mu[0], k = ym.mu[0];
      Scalar sign = m % 2 == 0 ? Scalar(1) : Scalar(-1);
      Scalar fact(Rational(factorial(m) * factorial(k)));
      Scalar top = xm.alpha[0] + Scalar(static_cast<long>(m));
      total += xc * yc * sign * fact * binomial(top, m + k + 1);
    }
  }
  return total;
}

inline Scalar cocycle(const AlgebraElement& x, const AlgebraElement& y) {
  return cocycle(to_falling(x), to_falling(y));
}

/// Bracket of the extension: bodies commute as usual, C is central, and the
/// cocycle of the bodies feeds the central coordinate.
inline ExtendedElement extended_bracket(const ExtendedElement& x, const ExtendedElement& y) {
  return ExtendedElement(bracket(x.body(), y.body()), cocycle(x.body(), y.body()));
}

}  // namespace weyl
