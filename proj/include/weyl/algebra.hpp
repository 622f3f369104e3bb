#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/gamma.hpp"
#include "weyl/scalar.hpp"

namespace weyl {

/** Basis word t^alpha D^mu: a group grade and derivation exponents. */
struct Monomial {
  GroupElement alpha;
  std::vector<unsigned long> mu;

  unsigned long level() const {
    unsigned long s = 0;
    for (unsigned long m : mu) s += m;
    return s;
  }
};

inline bool operator==(const Monomial& x, const Monomial& y) {
  return x.alpha == y.alpha && x.mu == y.mu;
}

/// Lexicographic on the grade, then graded-lexicographic on the exponents.
inline bool operator<(const Monomial& x, const Monomial& y) {
  if (x.alpha < y.alpha) return true;
  if (y.alpha < x.alpha) return false;
  unsigned long lx = x.level(), ly = y.level();
  if (lx != ly) return lx < ly;
  return x.mu < y.mu;
}

inline unsigned long level(const std::vector<unsigned long>& mu) {
  unsigned long s = 0;
  for (unsigned long m : mu) s += m;
  return s;
}

/**
 * Element of the generalized Weyl algebra over a group context: a finite
 * F-linear combination of words t^alpha D^mu.  The associative product
 * follows from D_i t^beta = beta_i t^beta + t^beta D_i:
 *
 *   (t^a D^mu)(t^b D^nu) = sum_lambda C(mu,lambda) b^lambda t^{a+b} D^{mu+nu-lambda}.
 */
class AlgebraElement {
 public:
  explicit AlgebraElement(GroupContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("AlgebraElement: null context");
  }

  static AlgebraElement zero(GroupContextPtr ctx) { return AlgebraElement(std::move(ctx)); }
  static AlgebraElement one(const GroupContextPtr& ctx) {
    return term(GroupElement::zero(ctx), std::vector<unsigned long>(ctx->n(), 0), Scalar(1));
  }
  static AlgebraElement term(GroupElement alpha, std::vector<unsigned long> mu,
                             Scalar coeff = Scalar(1)) {
    AlgebraElement x(alpha.context());
    if (mu.size() != x.ctx_->n())
      throw std::invalid_argument("AlgebraElement: exponent arity mismatch");
    x.add_term(Monomial{std::move(alpha), std::move(mu)}, coeff);
    return x;
  }
  static AlgebraElement t_power(GroupElement alpha) {
    std::vector<unsigned long> mu(alpha.context()->n(), 0);
    return term(std::move(alpha), std::move(mu));
  }
  static AlgebraElement derivation(const GroupContextPtr& ctx, std::size_t i) {
    if (i >= ctx->n()) throw std::invalid_argument("AlgebraElement: derivation index");
    std::vector<unsigned long> mu(ctx->n(), 0);
    mu[i] = 1;
    return term(GroupElement::zero(ctx), std::move(mu));
  }

  const GroupContextPtr& context() const { return ctx_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest derivation level appearing in the support; 0 for the zero element.
  unsigned long level() const {
    unsigned long s = 0;
    for (const auto& [m, c] : terms_) s = std::max(s, m.level());
    return s;
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_context(x, y);
    AlgebraElement r = x;
    for (const auto& [m, c] : y.terms_) r.add_term(m, c);
    return r;
  }
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_context(x, y);
    AlgebraElement r = x;
    for (const auto& [m, c] : y.terms_) r.add_term(m, -c);
    return r;
  }
  AlgebraElement operator-() const {
    AlgebraElement r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& x) {
    AlgebraElement r(x.ctx_);
    for (const auto& [m, v] : x.terms_) r.add_term(m, c * v);
    return r;
  }

  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_context(x, y);
    AlgebraElement r(x.ctx_);
    std::size_t n = x.ctx_->n();
    for (const auto& [xm, xc] : x.terms_) {
      for (const auto& [ym, yc] : y.terms_) {
        GroupElement grade = xm.alpha + ym.alpha;
        Scalar base = xc * yc;
        std::vector<unsigned long> lambda(n, 0);
        for (;;) {
          Scalar coeff = base;
          bool skip = false;
          std::vector<unsigned long> target = ym.mu;
          for (std::size_t i = 0; i < n && !skip; ++i) {
            target[i] += xm.mu[i] - lambda[i];
            if (lambda[i] == 0) continue;
            Scalar b = ym.alpha[i].pow(static_cast<long>(lambda[i]));
            if (b.is_zero()) {
              skip = true;
              break;
            }
            coeff = coeff * Scalar(Rational(binomial_int(xm.mu[i], lambda[i]))) * b;
          }
          if (!skip) r.add_term(Monomial{grade, std::move(target)}, coeff);
          std::size_t k = 0;
          while (k < n && lambda[k] == xm.mu[k]) lambda[k++] = 0;
          if (k == n) break;
          ++lambda[k];
        }
      }
    }
    return r;
  }

  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
    return x.terms_ == y.terms_;
  }
  friend bool operator!=(const AlgebraElement& x, const AlgebraElement& y) { return !(x == y); }

  AlgebraElement pow(unsigned long e) const {
    AlgebraElement acc = one(ctx_), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  static void require_same_context(const AlgebraElement& x, const AlgebraElement& y) {
    if (!(x.ctx_ == y.ctx_ || *x.ctx_ == *y.ctx_))
      throw std::domain_error("AlgebraElement: context mismatch");
  }

 private:
  GroupContextPtr ctx_;
  std::map<Monomial, Scalar> terms_;
};

inline AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  return x * y - y * x;
}

/**
 * The order-two Lie automorphism determined by t^alpha -> -t^alpha and
 * D^mu -> (-1)^{level+1} D^mu: on a word it reverses the factors,
 * sigma(t^alpha D^mu) = (-1)^{level(mu)+1} D^mu t^alpha.
 */
inline AlgebraElement sigma(const AlgebraElement& x) {
  AlgebraElement r(x.context());
  for (const auto& [m, c] : x.terms()) {
    AlgebraElement dmu =
        AlgebraElement::term(GroupElement::zero(x.context()), m.mu);
    Scalar sign = m.level() % 2 == 0 ? Scalar(-1) : Scalar(1);
    r = r + (sign * c) * (dmu * AlgebraElement::t_power(m.alpha));
  }
  return r;
}

inline std::map<GroupElement, AlgebraElement> grade_decompose(const AlgebraElement& x) {
  std::map<GroupElement, AlgebraElement> parts;
  for (const auto& [m, c] : x.terms()) {
    auto it = parts.find(m.alpha);
    if (it == parts.end()) it = parts.emplace(m.alpha, AlgebraElement(x.context())).first;
    it->second.add_term(m, c);
  }
  return parts;
}

// --- falling-factorial basis --------------------------------------------

/// Signed Stirling numbers of the first kind: [x]_k = sum_j s(k,j) x^j.
inline Integer stirling_first_signed(unsigned long k, unsigned long j) {
  if (j > k) return 0;
  std::vector<Integer> row{1};  // row for k = 0
  for (unsigned long m = 0; m < k; ++m) {
    std::vector<Integer> next(m + 2, 0);
    for (unsigned long i = 0; i < row.size(); ++i) {
      next[i + 1] += row[i];
      next[i] -= Integer(m) * row[i];
    }
    row = std::move(next);
  }
  return row[j];
}

/// Stirling numbers of the second kind: x^k = sum_j S(k,j) [x]_j.
inline Integer stirling_second(unsigned long k, unsigned long j) {
  if (j > k) return 0;
  std::vector<Integer> row{1};
  for (unsigned long m = 0; m < k; ++m) {
    std::vector<Integer> next(m + 2, 0);
    for (unsigned long i = 0; i < row.size(); ++i) {
      next[i + 1] += row[i];
      next[i] += Integer(i) * row[i];
    }
    row = std::move(next);
  }
  return row[j];
}

/**
 * Element written in the basis t^alpha [D]_mu with coordinatewise falling
 * powers [D_i]_k = D_i(D_i - 1)...(D_i - k + 1).  Pure container; arithmetic
 * lives on AlgebraElement.
 */
class FallingElement {
 public:
  explicit FallingElement(GroupContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("FallingElement: null context");
  }

  const GroupContextPtr& context() const { return ctx_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend bool operator==(const FallingElement& x, const FallingElement& y) {
    return x.terms_ == y.terms_;
  }

 private:
  GroupContextPtr ctx_;
  std::map<Monomial, Scalar> terms_;
};

namespace detail {

template <class Out, class StirlingRow>
void convert_basis(const std::map<Monomial, Scalar>& terms, Out& out, StirlingRow&& number) {
  for (const auto& [m, c] : terms) {
    std::size_t n = m.mu.size();
    std::vector<unsigned long> j(n, 0);
    for (;;) {
      Scalar coeff = c;
      for (std::size_t i = 0; i < n; ++i)
        if (m.mu[i] > 0) coeff = coeff * Scalar(Rational(number(m.mu[i], j[i])));
      out.add_term(Monomial{m.alpha, j}, coeff);
      std::size_t k = 0;
      while (k < n && j[k] == m.mu[k]) j[k++] = 0;
      if (k == n) break;
      ++j[k];
    }
  }
}

}  // namespace detail

inline FallingElement to_falling(const AlgebraElement& x) {
  FallingElement out(x.context());
  detail::convert_basis(x.terms(), out, stirling_second);
  return out;
}

inline AlgebraElement from_falling(const FallingElement& x) {
  AlgebraElement out(x.context());
  detail::convert_basis(x.terms(), out, stirling_first_signed);
  return out;
}

/// The operator t^i (d/dt)^j = t^{i-j} [D]_j, for n = 1 contexts containing Z.
inline AlgebraElement from_ddt(const GroupContextPtr& ctx, long i, unsigned long j) {
  if (ctx->n() != 1) throw std::domain_error("from_ddt: rank-one contexts only");
  GroupElement alpha(ctx, {Scalar(i - static_cast<long>(j))});
  FallingElement f(ctx);
  f.add_term(Monomial{std::move(alpha), {j}}, Scalar(1));
  return from_falling(f);
}

/**
 * The element t^{i*alpha} d^j of the rank-one subalgebra generated by a
 * grade alpha and a derivation d = sum d_k D_k with <alpha, d> nonzero.
 */
inline AlgebraElement embed_rank1(const GroupElement& alpha, const DerivationVector& d, long i,
                                  unsigned long j) {
  if (inner_product(alpha, d).is_zero())
    throw std::domain_error("embed_rank1: derivation is degenerate on the grade");
  const GroupContextPtr& ctx = alpha.context();
  std::size_t n = ctx->n();
  std::vector<Scalar> coords(n);
  for (std::size_t k = 0; k < n; ++k) coords[k] = Scalar(i) * alpha[k];
  GroupElement grade(ctx, std::move(coords));

  AlgebraElement out(ctx);
  std::vector<unsigned long> mu(n, 0);
  auto expand = [&](auto&& self, std::size_t pos, unsigned long left, const Scalar& acc) -> void {
    if (pos + 1 == n) {
      mu[pos] = left;
      Scalar c = acc * d.coeffs[pos].pow(static_cast<long>(left));
      if (left > 0 && d.coeffs[pos].is_zero()) return;
      Rational multinomial = Rational(factorial(j));
      for (unsigned long m : mu) multinomial /= Rational(factorial(m));
      out.add_term(Monomial{grade, mu}, c * Scalar(multinomial));
      return;
    }
    for (unsigned long take = 0; take <= left; ++take) {
      if (take > 0 && d.coeffs[pos].is_zero()) break;
      mu[pos] = take;
      self(self, pos + 1, left - take, acc * d.coeffs[pos].pow(static_cast<long>(take)));
    }
  };
  expand(expand, 0, j, Scalar(1));
  return out;
}

}  // namespace weyl
