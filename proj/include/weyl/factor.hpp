#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "weyl/polynomial.hpp"
#include "weyl/scalar.hpp"

namespace weyl {

namespace detail {

inline bool is_integer_poly(const Poly<Rational>& f) {
  for (const auto& c : f.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

inline std::vector<Integer> signed_divisors(const Integer& value) {
  Integer v = abs(value);
  std::vector<Integer> out;
  for (Integer k = 1; k * k <= v; ++k) {
    if (v % k != 0) continue;
    out.push_back(k);
    out.push_back(-k);
    Integer q = v / k;
    if (q != k) {
      out.push_back(q);
      out.push_back(-q);
    }
  }
  return out;
}

/**
 * Kronecker factorization of a monic integer polynomial into monic integer
 * irreducibles.  Candidate factors of degree k are interpolated through
 * divisor tuples at k+1 integer nodes; the Newton tableau is built node by
 * node so branches with non-integer divided differences die early.
 */
inline std::vector<Poly<Rational>> kronecker_monic(Poly<Rational> f) {
  std::vector<Poly<Rational>> out;
  if (f.degree() <= 0) return out;

  struct Node {
    long x;
    Integer value;
    std::vector<Integer> divisors;
  };

  while (f.degree() > 1) {
    long n = f.degree();
    std::vector<Node> pool;
    bool peeled = false;
    for (long a = 0; static_cast<long>(pool.size()) <= n && a <= n + 32; ++a) {
      for (long x : a == 0 ? std::vector<long>{0} : std::vector<long>{a, -a}) {
        Rational v = f(Rational(x));
        if (v == 0) {
          f = divmod(f, Poly<Rational>(std::vector<Rational>{Rational(-x), Rational(1)})).first;
          out.push_back(Poly<Rational>(std::vector<Rational>{Rational(-x), Rational(1)}));
          peeled = true;
          break;
        }
        pool.push_back({x, v.get_num(), {}});
      }
      if (peeled) break;
    }
    if (peeled) continue;

    for (auto& node : pool) node.divisors = signed_divisors(node.value);
    std::sort(pool.begin(), pool.end(), [](const Node& a, const Node& b) {
      return a.divisors.size() < b.divisors.size();
    });

    std::optional<Poly<Rational>> found;
    for (long k = 1; !found && k <= n / 2; ++k) {
      std::vector<Node> pts(pool.begin(), pool.begin() + (k + 1));
      // Newton tableau rows: diffs[j] = divided difference of order j for the
      // current partial tuple; an integer polynomial has integer divided
      // differences at integer nodes, which prunes most tuples immediately.
      std::vector<std::vector<Integer>> diffs(static_cast<std::size_t>(k) + 1);

      auto search = [&](auto&& self, std::size_t level) -> bool {
        if (level == pts.size()) {
          if (diffs[k].front() != 1) return false;  // not monic of degree exactly k
          Poly<Rational> h;
          Poly<Rational> basis(Rational(1));
          for (std::size_t j = 0; j < diffs.size(); ++j) {
            h += Rational(diffs[j].front()) * basis;
            basis *= Poly<Rational>(std::vector<Rational>{Rational(-pts[j].x), Rational(1)});
          }
          if (!divides(h, f)) return false;
          found = h;
          return true;
        }
        for (const Integer& dv : pts[level].divisors) {
          std::vector<Integer> row{dv};
          bool ok = true;
          for (std::size_t j = 0; j < level; ++j) {
            Integer delta = row[j] - diffs[j][level - 1 - j];
            Integer span = Integer(pts[level].x) - Integer(pts[level - 1 - j].x);
            if (delta % span != 0) {
              ok = false;
              break;
            }
            row.push_back(delta / span);
          }
          if (!ok) continue;
          for (std::size_t j = 0; j <= level; ++j) diffs[j].push_back(row[j]);
          if (self(self, level + 1)) return true;
          for (std::size_t j = 0; j <= level; ++j) diffs[j].pop_back();
        }
        return false;
      };
      search(search, 0);
    }

    if (!found) {
      out.push_back(f);
      return out;
    }
    out.push_back(*found);
    f = divmod(f, *found).first;
  }
  if (f.degree() == 1) out.push_back(f);
  return out;
}

/// Monic irreducible factors of a squarefree monic rational polynomial.
inline std::vector<Poly<Rational>> factor_squarefree_rational(const Poly<Rational>& f) {
  if (f.degree() <= 1) return {f};
  Integer den(1);
  for (const auto& c : f.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> g(f.coeffs().size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational c = Rational(den) * f.coeffs()[i];
    g[i] = c.get_num();
  }
  Integer m = g.back();
  // Monic reduction F(y) = m^(n-1) f(y/m): integer, monic, same splitting.
  std::vector<Rational> big(g.size());
  big.back() = Rational(1);
  Integer scale(1);
  for (std::size_t i = g.size() - 1; i-- > 0;) {
    big[i] = Rational(g[i] * scale);
    scale *= m;
  }
  auto raw = kronecker_monic(Poly<Rational>(std::move(big)));
  std::vector<Poly<Rational>> out;
  out.reserve(raw.size());
  Rational mr(m);
  for (const auto& h : raw) {
    std::vector<Rational> c(h.coeffs().size());
    Rational p(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = h.coeffs()[i] * p;
      p *= mr;
    }
    out.push_back(Poly<Rational>(std::move(c)).monic());
  }
  std::sort(out.begin(), out.end(), [](const Poly<Rational>& a, const Poly<Rational>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
      if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    return false;
  });
  return out;
}

}  // namespace detail

/// Monic irreducible factors with multiplicities; f = lc(f) * prod h_i^{m_i}.
inline std::vector<std::pair<Poly<Rational>, unsigned long>> factor_over_rationals(
    const Poly<Rational>& f) {
  std::vector<std::pair<Poly<Rational>, unsigned long>> out;
  for (const auto& [part, mult] : squarefree_decomposition(f))
    for (const auto& h : detail::factor_squarefree_rational(part)) out.emplace_back(h, mult);
  return out;
}

/// Roots of f in Q, without multiplicity, via the rational root theorem.
inline std::vector<Rational> rational_roots(const Poly<Rational>& f) {
  std::vector<Rational> out;
  if (f.degree() < 0) throw std::domain_error("rational_roots: zero polynomial");
  if (f.degree() == 0) return out;
  Integer den(1);
  for (const auto& c : f.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> g(f.coeffs().size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = Rational(Rational(den) * f.coeffs()[i]).get_num();
  std::size_t low = 0;
  while (g[low] == 0) ++low;
  if (low > 0) out.push_back(Rational(0));
  Integer a0 = g[low], an = g.back();
  for (const Integer& p : detail::signed_divisors(a0)) {
    for (const Integer& q : detail::signed_divisors(an)) {
      if (q <= 0) continue;
      Rational cand(p, q);
      cand.canonicalize();
      if (f(cand) == 0 && std::find(out.begin(), out.end(), cand) == out.end())
        out.push_back(cand);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Square root of s inside its own field, if one exists there.
inline std::optional<Scalar> sqrt_in_field(const Scalar& s, const FieldContext& field) {
  auto rational_sqrt = [](const Rational& r) -> std::optional<Rational> {
    if (r < 0) return std::nullopt;
    Integer num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    return Rational(sqrt(num), sqrt(den));
  };
  if (s.is_rational()) {
    Rational u = s.rational_part();
    if (auto r = rational_sqrt(u)) return Scalar(*r);
    if (!field.rational_only()) {
      Rational w = u / Rational(static_cast<long>(field.d()));
      if (auto r = rational_sqrt(w)) return Scalar(Rational(0), *r, field);
    }
    return std::nullopt;
  }
  if (field.rational_only() || s.d() != field.d()) return std::nullopt;
  // (x + y*sqrt(d))^2 = u + v*sqrt(d): x^2 is a root of 4z^2 - 4uz + d v^2.
  Rational u = s.rational_part(), v = s.sqrt_part();
  auto t = rational_sqrt(u * u - Rational(static_cast<long>(field.d())) * v * v);
  if (!t) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational x2 = (u + Rational(sign) * *t) / 2;
    if (auto x = rational_sqrt(x2)) {
      if (*x == 0) continue;
      return Scalar(*x, v / (2 * *x), field);
    }
  }
  return std::nullopt;
}

namespace detail {

inline Poly<Rational> poly_to_rational(const Poly<Scalar>& f) {
  std::vector<Rational> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs()[i].as_rational();
  return Poly<Rational>(std::move(c));
}

inline Poly<Scalar> poly_from_rational(const Poly<Rational>& f) {
  std::vector<Scalar> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Scalar(f.coeffs()[i]);
  return Poly<Scalar>(std::move(c));
}

inline bool poly_is_rational(const Poly<Scalar>& f) {
  for (const auto& c : f.coeffs())
    if (!c.is_rational()) return false;
  return true;
}

inline Poly<Scalar> poly_conjugate(const Poly<Scalar>& f) {
  std::vector<Scalar> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeffs()[i].conjugate();
  return Poly<Scalar>(std::move(c));
}

/**
 * Trager norm descent for a squarefree monic f over Q(sqrt(d)): shift by
 * s*sqrt(d) until the norm into Q[x] is squarefree, factor the norm over Q,
 * and read each factor of f off as a gcd.
 */
inline std::vector<Poly<Scalar>> factor_squarefree_quadratic(const Poly<Scalar>& f,
                                                             const FieldContext& field) {
  if (f.degree() <= 1) return {f};
  if (f.degree() == 2) {
    Scalar b = f.coeff(1), c0 = f.coeff(0);
    auto r = sqrt_in_field(b * b - Scalar(4) * c0, field);
    if (!r) return {f};
    Scalar half(Rational(1, 2));
    Scalar r1 = (Scalar(0) - b + *r) * half, r2 = (Scalar(0) - b - *r) * half;
    return {Poly<Scalar>(std::vector<Scalar>{Scalar(0) - r1, Scalar(1)}),
            Poly<Scalar>(std::vector<Scalar>{Scalar(0) - r2, Scalar(1)})};
  }
  Scalar root = Scalar::sqrt_of(field);
  for (long s = 0;; ++s) {
    Poly<Scalar> g = f.shifted(Scalar(0) - Scalar(s) * root);
    Poly<Scalar> norm = g * poly_conjugate(g);
    if (!poly_is_rational(norm))
      throw std::logic_error("factor: norm polynomial left the rationals");
    Poly<Rational> nq = poly_to_rational(norm);
    if (gcd(nq, nq.derivative()).degree() != 0) continue;
    std::vector<Poly<Scalar>> out;
    for (const auto& h : factor_squarefree_rational(nq)) {
      Poly<Scalar> piece = gcd(g, poly_from_rational(h));
      if (piece.degree() > 0) out.push_back(piece.shifted(Scalar(s) * root).monic());
    }
    return out;
  }
}

}  // namespace detail

/// Monic irreducible factors with multiplicities over the given field.
inline std::vector<std::pair<Poly<Scalar>, unsigned long>> factor_over_field(
    const Poly<Scalar>& f, const FieldContext& field) {
  for (const auto& c : f.coeffs())
    if (!c.is_rational() && c.d() != field.d())
      throw std::domain_error("factor_over_field: coefficient outside the field");
  std::vector<std::pair<Poly<Scalar>, unsigned long>> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    std::vector<Poly<Scalar>> pieces;
    if (field.rational_only()) {
      for (const auto& h : detail::factor_squarefree_rational(detail::poly_to_rational(part)))
        pieces.push_back(detail::poly_from_rational(h));
    } else {
      pieces = detail::factor_squarefree_quadratic(part, field);
    }
    for (const auto& h : pieces) out.emplace_back(h, mult);
  }
  return out;
}

inline bool is_irreducible_over(const Poly<Scalar>& f, const FieldContext& field) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  auto factors = factor_over_field(f, field);
  return factors.size() == 1 && factors[0].second == 1;
}

/// Roots of f in the field, without multiplicity.
inline std::vector<Scalar> roots_in_field(const Poly<Scalar>& f, const FieldContext& field) {
  std::vector<Scalar> out;
  for (const auto& [h, mult] : factor_over_field(f, field))
    if (h.degree() == 1) out.push_back(Scalar(0) - h.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace weyl
