#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl {

/** Dense univariate polynomial over a field type T (Rational, Scalar, ...). */
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(T c) { coeff_ = {std::move(c)}; trim(); }  // NOLINT: implicit by design
  explicit Poly(std::vector<T> coeffs) : coeff_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
  static Poly monomial(std::size_t k, T c = T(1)) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeff_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeff_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeff_; }
  T coeff(std::size_t k) const { return k < coeff_.size() ? coeff_[k] : T(0); }
  const T& lc() const {
    if (coeff_.empty()) throw std::domain_error("Poly: leading coefficient of zero");
    return coeff_.back();
  }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
    return acc;
  }

  friend Poly operator+(const Poly& f, const Poly& g) {
    std::vector<T> r(std::max(f.coeff_.size(), g.coeff_.size()), T(0));
    for (std::size_t i = 0; i < f.coeff_.size(); ++i) r[i] = r[i] + f.coeff_[i];
    for (std::size_t i = 0; i < g.coeff_.size(); ++i) r[i] = r[i] + g.coeff_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& f, const Poly& g) {
    std::vector<T> r(std::max(f.coeff_.size(), g.coeff_.size()), T(0));
    for (std::size_t i = 0; i < f.coeff_.size(); ++i) r[i] = r[i] + f.coeff_[i];
    for (std::size_t i = 0; i < g.coeff_.size(); ++i) r[i] = r[i] - g.coeff_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<T> r = coeff_;
    for (auto& c : r) c = T(0) - c;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly();
    std::vector<T> r(f.coeff_.size() + g.coeff_.size() - 1, T(0));
    for (std::size_t i = 0; i < f.coeff_.size(); ++i)
      for (std::size_t j = 0; j < g.coeff_.size(); ++j)
        r[i + j] = r[i + j] + f.coeff_[i] * g.coeff_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& c, const Poly& f) {
    std::vector<T> r = f.coeff_;
    for (auto& v : r) v = c * v;
    return Poly(std::move(r));
  }

  Poly& operator+=(const Poly& g) { return *this = *this + g; }
  Poly& operator-=(const Poly& g) { return *this = *this - g; }
  Poly& operator*=(const Poly& g) { return *this = *this * g; }

  friend bool operator==(const Poly& f, const Poly& g) { return f.coeff_ == g.coeff_; }
  friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

  /// Quotient and remainder with deg r < deg g.
  friend std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly r = f;
    std::vector<T> q(f.coeff_.size() > g.coeff_.size() + 1
                         ? f.coeff_.size() - g.coeff_.size() + 1
                         : f.coeff_.size() + 1,
                     T(0));
    T glc_inv = T(1) / g.lc();
    while (!r.is_zero() && r.degree() >= g.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - g.degree());
      T factor = r.lc() * glc_inv;
      q[shift] = q[shift] + factor;
      for (std::size_t i = 0; i < g.coeff_.size(); ++i)
        r.coeff_[i + shift] = r.coeff_[i + shift] - factor * g.coeff_[i];
      r.trim();
    }
    return {Poly(std::move(q)), r};
  }

  Poly derivative() const {
    if (coeff_.size() <= 1) return Poly();
    std::vector<T> r(coeff_.size() - 1);
    for (std::size_t i = 1; i < coeff_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * coeff_[i];
    return Poly(std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    T inv = T(1) / lc();
    return inv * *this;
  }

  Poly pow(unsigned long e) const {
    Poly acc(T(1)), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// Substitute x -> x + shift.
  Poly shifted(const T& shift) const {
    Poly lin(std::vector<T>{shift, T(1)});
    Poly acc, power(T(1));
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      acc += coeff_[i] * power;
      power *= lin;
    }
    return acc;
  }

 private:
  void trim() {
    while (!coeff_.empty() && coeff_.back() == T(0)) coeff_.pop_back();
  }

  std::vector<T> coeff_;
};

template <class T>
Poly<T> gcd(Poly<T> f, Poly<T> g) {
  while (!g.is_zero()) {
    auto [q, r] = divmod(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

template <class T>
bool divides(const Poly<T>& g, const Poly<T>& f) {
  if (g.is_zero()) return f.is_zero();
  return divmod(f, g).second.is_zero();
}

/// f / gcd(f, f'): the product of the distinct irreducible factors of f.
template <class T>
Poly<T> squarefree_part(const Poly<T>& f) {
  if (f.degree() <= 0) return f.monic();
  Poly<T> g = gcd(f, f.derivative());
  return divmod(f, g).first.monic();
}

/// Squarefree decomposition f = prod s_i^i (Yun); returns (s_i, i) with s_i nonconstant.
template <class T>
std::vector<std::pair<Poly<T>, unsigned long>> squarefree_decomposition(const Poly<T>& f) {
  std::vector<std::pair<Poly<T>, unsigned long>> out;
  if (f.degree() <= 0) return out;
  Poly<T> a = f.monic();
  Poly<T> g = gcd(a, a.derivative());
  Poly<T> w = divmod(a, g).first;
  unsigned long i = 1;
  while (w.degree() > 0) {
    Poly<T> y = gcd(w, g);
    Poly<T> s = divmod(w, y).first;
    if (s.degree() > 0) out.emplace_back(s.monic(), i);
    w = std::move(y);
    g = divmod(g, w).first;
    ++i;
  }
  return out;
}

inline std::string format_poly(const Poly<Rational>& f, const std::string& var = "c") {
  if (f.is_zero()) return "0";
  std::string out;
  for (long k = f.degree(); k >= 0; --k) {
    Rational c = f.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    std::string term;
    Rational a = abs(c);
    if (k == 0)
      term = a.get_str();
    else {
      if (a != 1) term = a.get_str() + "*";
      term += var;
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace weyl
