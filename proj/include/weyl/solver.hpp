#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/action_table.hpp"
#include "weyl/factor.hpp"

namespace weyl {

/// Quotient of two rational polynomials, kept reduced with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly<Rational>(Rational(1))) {}
  RationalFunction(const Rational& value)
      : num_(Poly<Rational>(value)), den_(Poly<Rational>(Rational(1))) {}
  explicit RationalFunction(Poly<Rational> num)
      : num_(std::move(num)), den_(Poly<Rational>(Rational(1))) {}
  RationalFunction(Poly<Rational> num, Poly<Rational> den)
      : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  static RationalFunction variable() { return RationalFunction(Poly<Rational>::x()); }

  const Poly<Rational>& num() const { return num_; }
  const Poly<Rational>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational eval(const Rational& at) const {
    Rational bottom = den_(at);
    if (bottom == 0) throw std::domain_error("RationalFunction: pole at evaluation point");
    return num_(at) / bottom;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RationalFunction operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    if (a.is_zero()) return RationalFunction();
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& other) { return *this = *this + other; }
  RationalFunction& operator-=(const RationalFunction& other) { return *this = *this - other; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  std::string str(const std::string& var = "c") const {
    if (den_.degree() == 0) return format_poly(num_, var);
    return "(" + format_poly(num_, var) + ")/(" + format_poly(den_, var) + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<Rational>(Rational(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly<Rational> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    Rational lead = den_.lc();
    if (lead != 1) {
      num_ = Rational(1) / lead * num_;
      den_ = Rational(1) / lead * den_;
    }
  }

  Poly<Rational> num_;
  Poly<Rational> den_;
};

/// One coefficient family of the graded action ansatz: family 0..3 is the
/// order-0..3 correction at a given t-exponent.
struct UnknownId {
  int family = 0;
  long index = 0;

  friend bool operator<(const UnknownId& a, const UnknownId& b) {
    return std::tie(a.family, a.index) < std::tie(b.family, b.index);
  }
  friend bool operator==(const UnknownId& a, const UnknownId& b) {
    return a.family == b.family && a.index == b.index;
  }
};

inline std::string format_unknown(const UnknownId& u) {
  static const char* const names[] = {"P", "Q", "R", "S"};
  if (u.family < 0 || u.family > 3) throw std::invalid_argument("format_unknown: bad family");
  return std::string(names[u.family]) + "[" + std::to_string(u.index) + "]";
}

template <class F>
struct AffineForm {
  std::map<UnknownId, F> lin;
  F cst{};
};

/// A single polynomial relation between the unknowns: quadratic, linear, and
/// constant parts with coefficients over the working field.
template <class F>
struct Constraint {
  std::map<std::pair<UnknownId, UnknownId>, F> quad;
  std::map<UnknownId, F> lin;
  F cst{};
  std::string tag;
};

struct ConstraintSystem {
  long range = 0;
  std::vector<Constraint<RationalFunction>> equations;
};

namespace detail {

inline bool value_is_zero(const RationalFunction& v) { return v.is_zero(); }
inline bool value_is_zero(const Rational& v) { return v == 0; }

inline std::string value_str(const RationalFunction& v) { return v.str(); }
inline std::string value_str(const Rational& v) { return v.get_str(); }

/// Expansion of a rank-one element in the t^i(d/dt)^j basis, keyed by
/// (t-exponent, order).
inline std::map<std::pair<long, unsigned long>, Rational> ddt_expand(const AlgebraElement& x) {
  std::map<std::pair<long, unsigned long>, Rational> out;
  for (const auto& [mono, coeff] : x.terms()) {
    Scalar grade = mono.alpha[0];
    if (!grade.is_integer())
      throw std::domain_error("ddt_expand: grade outside the integer lattice");
    long alpha = grade.as_long();
    unsigned long r = mono.mu[0];
    for (unsigned long f = 0; f <= r; ++f) {
      Rational c = coeff.as_rational() * Rational(stirling_second(r, f));
      if (c == 0) continue;
      auto key = std::make_pair(alpha + static_cast<long>(f), f);
      Rational& slot = out[key];
      slot += c;
      if (slot == 0) out.erase(key);
    }
  }
  return out;
}

/// The polynomial x(x-1)...(x-k+1) shifted to argument x+r.
inline Poly<Rational> falling_poly(unsigned long k, long r) {
  Poly<Rational> out(Rational(1));
  for (unsigned long d = 0; d < k; ++d)
    out = out * (Poly<Rational>::x() + Poly<Rational>(Rational(r - static_cast<long>(d))));
  return out;
}

/// Coefficients of the action of t^i(d/dt)^j at weight argument shifted by r,
/// as affine forms in the unknowns indexed by power of the weight variable.
/// The three normalization seeds are substituted on the spot.
inline std::vector<AffineForm<RationalFunction>> action_coefficients(long i, unsigned long j,
                                                                     long r) {
  std::vector<AffineForm<RationalFunction>> out(j + 1);
  for (unsigned long m = 0; m <= j; ++m) {
    Rational binom(binomial_int(j, m));
    Poly<Rational> base = falling_poly(j - m, r);
    RationalFunction seed;
    bool seeded = false;
    if (m == 0 && i == 0) {
      seed = RationalFunction::variable();
      seeded = true;
    } else if (m == 0 && i == 1) {
      seed = RationalFunction(Rational(1));
      seeded = true;
    } else if (m == 1 && i == 1) {
      seeded = true;
    }
    for (long d = 0; d <= base.degree(); ++d) {
      Rational c = binom * base.coeff(static_cast<std::size_t>(d));
      if (c == 0) continue;
      if (seeded) {
        out[d].cst += RationalFunction(c) * seed;
      } else {
        UnknownId u{static_cast<int>(m), i};
        out[d].lin[u] += RationalFunction(c);
      }
    }
  }
  return out;
}

template <class F>
void add_product(Constraint<F>& eq, const AffineForm<F>& a, const AffineForm<F>& b,
                 const F& factor) {
  for (const auto& [u, cu] : a.lin) {
    for (const auto& [v, cv] : b.lin) {
      auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
      eq.quad[key] += factor * cu * cv;
    }
    if (!value_is_zero(b.cst)) eq.lin[u] += factor * cu * b.cst;
  }
  if (!value_is_zero(a.cst)) {
    for (const auto& [v, cv] : b.lin) eq.lin[v] += factor * a.cst * cv;
    eq.cst += factor * a.cst * b.cst;
  }
}

template <class F>
void prune(Constraint<F>& eq) {
  for (auto it = eq.quad.begin(); it != eq.quad.end();)
    it = value_is_zero(it->second) ? eq.quad.erase(it) : std::next(it);
  for (auto it = eq.lin.begin(); it != eq.lin.end();)
    it = value_is_zero(it->second) ? eq.lin.erase(it) : std::next(it);
}

template <class F>
bool trivially_satisfied(const Constraint<F>& eq) {
  return eq.quad.empty() && eq.lin.empty() && value_is_zero(eq.cst);
}

}  // namespace detail

/// The full commutator constraint system on the degree-at-most-3 action
/// ansatz over t-exponents in [-K, K], one equation per weight power per
/// generator pair whose bracket stays inside the ansatz range.
inline ConstraintSystem gen_constraints(long K) {
  if (K < 3) throw std::invalid_argument("gen_constraints: range must be at least 3");
  auto ctx = integer_lattice(1);

  struct Word {
    long i;
    unsigned long j;
  };
  std::vector<Word> words;
  for (long i = -K; i <= K; ++i)
    for (unsigned long j = 0; j <= 3; ++j) words.push_back({i, j});

  ConstraintSystem system;
  system.range = K;

  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      const Word& x = words[a];
      const Word& y = words[b];
      AlgebraElement lie = bracket(from_ddt(ctx, x.i, x.j), from_ddt(ctx, y.i, y.j));
      auto terms = detail::ddt_expand(lie);
      bool in_range = true;
      for (const auto& [key, coeff] : terms)
        if (std::labs(key.first) > K || key.second > 3) {
          in_range = false;
          break;
        }
      if (!in_range) continue;

      long shift_x = x.i - static_cast<long>(x.j);
      long shift_y = y.i - static_cast<long>(y.j);
      auto ax0 = detail::action_coefficients(x.i, x.j, 0);
      auto ay0 = detail::action_coefficients(y.i, y.j, 0);
      auto ax_shifted = detail::action_coefficients(x.i, x.j, shift_y);
      auto ay_shifted = detail::action_coefficients(y.i, y.j, shift_x);

      std::size_t degree = x.j + y.j;
      std::vector<Constraint<RationalFunction>> rows(degree + 1);
      RationalFunction plus(Rational(1)), minus(Rational(-1));
      for (std::size_t da = 0; da < ay0.size(); ++da)
        for (std::size_t db = 0; db < ax_shifted.size(); ++db)
          detail::add_product(rows[da + db], ay0[da], ax_shifted[db], plus);
      for (std::size_t da = 0; da < ax0.size(); ++da)
        for (std::size_t db = 0; db < ay_shifted.size(); ++db)
          detail::add_product(rows[da + db], ax0[da], ay_shifted[db], minus);
      for (const auto& [key, coeff] : terms) {
        auto aw = detail::action_coefficients(key.first, key.second, 0);
        RationalFunction factor(-coeff);
        for (std::size_t d = 0; d < aw.size(); ++d) {
          for (const auto& [u, cu] : aw[d].lin) rows[d].lin[u] += factor * cu;
          rows[d].cst += factor * aw[d].cst;
        }
      }

      for (std::size_t d = 0; d < rows.size(); ++d) {
        detail::prune(rows[d]);
        if (detail::trivially_satisfied(rows[d])) continue;
        rows[d].tag = "[w(" + std::to_string(x.i) + "," + std::to_string(x.j) + "),w(" +
                      std::to_string(y.i) + "," + std::to_string(y.j) + ")] @ n^" +
                      std::to_string(d);
        system.equations.push_back(std::move(rows[d]));
      }
    }
  }
  return system;
}

template <class F>
struct Elimination {
  std::map<UnknownId, AffineForm<F>> solved;
  std::vector<F> residuals;
  std::vector<std::pair<F, std::string>> pivots;
  std::vector<std::string> log;
  std::vector<std::string> unresolved;
  bool contradiction = false;
};

namespace detail {

template <class F>
Constraint<F> substitute(const Constraint<F>& eq, const std::map<UnknownId, AffineForm<F>>& solved) {
  Constraint<F> out;
  out.tag = eq.tag;
  out.cst = eq.cst;
  auto form_of = [&](const UnknownId& u) {
    auto it = solved.find(u);
    if (it != solved.end()) return it->second;
    AffineForm<F> self;
    self.lin.emplace(u, F(Rational(1)));
    return self;
  };
  for (const auto& [u, c] : eq.lin) {
    auto it = solved.find(u);
    if (it == solved.end()) {
      out.lin[u] += c;
    } else {
      for (const auto& [v, cv] : it->second.lin) out.lin[v] += c * cv;
      out.cst += c * it->second.cst;
    }
  }
  for (const auto& [pair, c] : eq.quad) add_product(out, form_of(pair.first), form_of(pair.second), c);
  prune(out);
  return out;
}

/// Insert u := form into the substitution map, rewriting existing entries.
template <class F>
void adopt(std::map<UnknownId, AffineForm<F>>& solved, const UnknownId& u, AffineForm<F> form) {
  for (auto& [w, existing] : solved) {
    auto it = existing.lin.find(u);
    if (it == existing.lin.end()) continue;
    F c = it->second;
    existing.lin.erase(it);
    for (const auto& [v, cv] : form.lin) {
      existing.lin[v] += c * cv;
      if (value_is_zero(existing.lin[v])) existing.lin.erase(v);
    }
    existing.cst += c * form.cst;
  }
  solved.emplace(u, std::move(form));
}

/// Run linear elimination to a fixed point.  Singleton equations pin an
/// unknown outright; when none remain, the shortest purely linear equation is
/// used as a pivot row.  Quadratic equations wait until substitution makes
/// them linear.  Nonzero constant leftovers are contradictions over a fixed
/// field and residual conditions over the function field.
template <class F>
Elimination<F> eliminate(const std::vector<Constraint<F>>& input, bool generic) {
  Elimination<F> result;
  std::vector<Constraint<F>> pending = input;

  auto solve_from = [&](Constraint<F> eq) {
    auto it = eq.lin.begin();
    UnknownId u = it->first;
    F coeff = it->second;
    AffineForm<F> form;
    form.cst = -eq.cst / coeff;
    for (auto rest = std::next(it); rest != eq.lin.end(); ++rest)
      form.lin.emplace(rest->first, -rest->second / coeff);
    result.pivots.emplace_back(coeff, eq.tag);
    result.log.push_back(format_unknown(u) + " from " + eq.tag);
    adopt(result.solved, u, std::move(form));
  };

  bool changed = true;
  while (changed && !result.contradiction) {
    changed = false;
    std::vector<Constraint<F>> kept;
    for (const auto& eq : pending) {
      Constraint<F> r = substitute(eq, result.solved);
      if (trivially_satisfied(r)) continue;
      if (r.quad.empty() && r.lin.empty()) {
        if (generic) {
          result.residuals.push_back(r.cst);
        } else {
          result.contradiction = true;
          result.log.push_back("contradiction at " + r.tag);
          break;
        }
        continue;
      }
      if (r.quad.empty() && r.lin.size() == 1) {
        solve_from(std::move(r));
        changed = true;
        continue;
      }
      kept.push_back(std::move(r));
    }
    pending = std::move(kept);

    if (!changed && !result.contradiction) {
      std::size_t best = pending.size();
      for (std::size_t idx = 0; idx < pending.size(); ++idx) {
        if (!pending[idx].quad.empty()) continue;
        if (best == pending.size() || pending[idx].lin.size() < pending[best].lin.size())
          best = idx;
      }
      if (best != pending.size()) {
        Constraint<F> row = substitute(pending[best], result.solved);
        pending.erase(pending.begin() + static_cast<long>(best));
        if (!row.quad.empty() || row.lin.empty()) continue;
        solve_from(std::move(row));
        changed = true;
      }
    }
  }

  if (!result.contradiction)
    for (const auto& eq : pending) {
      Constraint<F> r = substitute(eq, result.solved);
      if (trivially_satisfied(r)) continue;
      if (r.quad.empty() && r.lin.empty()) {
        if (generic)
          result.residuals.push_back(r.cst);
        else {
          result.contradiction = true;
          result.log.push_back("contradiction at " + r.tag);
        }
      } else {
        result.unresolved.push_back(r.tag);
      }
    }
  return result;
}

}  // namespace detail

struct SolutionFamily {
  Rational c;
  long range = 0;
  std::map<UnknownId, Rational> values;
};

struct SolveReport {
  std::vector<SolutionFamily> families;
  Poly<Rational> residual_gcd;
  std::vector<std::string> log;
};

namespace detail {

inline std::vector<Constraint<Rational>> fix_constant(const ConstraintSystem& system,
                                                      const Rational& c0) {
  std::vector<Constraint<Rational>> out;
  out.reserve(system.equations.size());
  for (const auto& eq : system.equations) {
    Constraint<Rational> fixed;
    fixed.tag = eq.tag;
    fixed.cst = eq.cst.eval(c0);
    for (const auto& [key, v] : eq.quad) fixed.quad.emplace(key, v.eval(c0));
    for (const auto& [u, v] : eq.lin) fixed.lin.emplace(u, v.eval(c0));
    prune(fixed);
    if (!trivially_satisfied(fixed)) out.push_back(std::move(fixed));
  }
  return out;
}

}  // namespace detail

/// Feasibility of the range-K system with the central value pinned to c0.
inline bool admits_solution(const ConstraintSystem& system, const Rational& c0) {
  auto fixed = detail::fix_constant(system, c0);
  auto result = detail::eliminate(fixed, false);
  return !result.contradiction && result.unresolved.empty();
}

inline bool admits_solution(long K, const Rational& c0) {
  return admits_solution(gen_constraints(K), c0);
}

/// Solve the system with the central value treated as an indeterminate:
/// eliminate symbolically, take the feasible central values from the residual
/// conditions and the pivot denominators, and re-verify each candidate over
/// the rationals.
inline SolveReport solve_p1(long K) {
  ConstraintSystem system = gen_constraints(K);
  auto generic = detail::eliminate(system.equations, true);

  SolveReport report;
  report.log = generic.log;

  Poly<Rational> common;
  for (const auto& r : generic.residuals) {
    if (r.is_zero()) continue;
    common = common.is_zero() ? r.num().monic() : gcd(common, r.num());
  }
  report.residual_gcd = common;

  std::set<Rational> candidates;
  if (!common.is_zero() && common.degree() > 0)
    for (const Rational& root : rational_roots(common)) candidates.insert(root);
  for (const auto& pivot : generic.pivots) {
    if (pivot.first.num().degree() == 0) continue;
    for (const Rational& root : rational_roots(pivot.first.num())) candidates.insert(root);
  }

  std::vector<Rational> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end(), [](const Rational& a, const Rational& b) {
    return a > b;
  });

  for (const Rational& c0 : ordered) {
    auto fixed = detail::fix_constant(system, c0);
    auto result = detail::eliminate(fixed, false);
    if (result.contradiction || !result.unresolved.empty()) {
      report.log.push_back("candidate c = " + c0.get_str() + " rejected");
      continue;
    }
    SolutionFamily family;
    family.c = c0;
    family.range = K;
    family.values[UnknownId{0, 0}] = c0;
    family.values[UnknownId{0, 1}] = 1;
    family.values[UnknownId{1, 1}] = 0;
    bool complete = true;
    for (const auto& [u, form] : result.solved) {
      if (form.lin.empty())
        family.values[u] = form.cst;
      else
        complete = false;
    }
    if (!complete) {
      report.log.push_back("candidate c = " + c0.get_str() + " left free parameters");
      continue;
    }
    report.log.push_back("candidate c = " + c0.get_str() + " admits a solution");
    report.families.push_back(std::move(family));
  }
  return report;
}

/// Value of the family's action coefficient for t^i(d/dt)^j at integer
/// weight argument w.
inline Rational family_action(const SolutionFamily& family, long i, unsigned long j, long w) {
  Rational out = 0;
  for (unsigned long m = 0; m <= j; ++m) {
    UnknownId u{static_cast<int>(m), i};
    auto it = family.values.find(u);
    if (it == family.values.end())
      throw std::out_of_range("family_action: value missing for " + format_unknown(u));
    Rational fall = 1;
    for (unsigned long d = 0; d < j - m; ++d) fall *= Rational(w - static_cast<long>(d));
    out += Rational(binomial_int(j, m)) * fall * it->second;
  }
  return out;
}

/// The family realized as rank-one action data over the integer lattice, on
/// the largest centered window the range supports.
inline ActionTable family_to_table(const SolutionFamily& family) {
  if (family.range < 4)
    throw std::invalid_argument("family_to_table: range too small for a usable window");
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, family.range - 2);
  std::map<GroupElement, std::size_t> dims;
  for (const auto& beta : window) dims.emplace(beta, 1);
  ActionTable table(ctx, window, dims);

  struct Entry {
    GenKey key;
    long i;
    unsigned long j;
  };
  const std::vector<Entry> layout = {
      {GenKey::t(0, 1), 1, 0},      {GenKey::t(0, -1), -1, 0}, {GenKey::t_d(0, 1, 0), 2, 1},
      {GenKey::t_d(0, -1, 0), 0, 1}, {GenKey::d(0), 1, 1},
  };
  for (const auto& entry : layout) {
    GroupElement degree = gen_degree(entry.key, ctx);
    for (const auto& beta : window) {
      if (window.find(degree + beta) == window.end()) continue;
      long w = beta[0].as_long();
      table.set_entry(entry.key, beta,
                      Matrix{{Scalar(family_action(family, entry.i, entry.j, w))}});
    }
  }
  return table;
}

/// The family obtained by composing the action with the sign automorphism
/// and renormalizing the grading basis by alternating signs.  Values are
/// produced for every t-exponent whose image stays inside the range.
inline SolutionFamily sigma_image_family(const SolutionFamily& family) {
  auto ctx = integer_lattice(1);
  long K = family.range;
  SolutionFamily image;
  image.c = -family.c;
  image.range = K;

  for (long i = -K; i <= K; ++i) {
    for (unsigned long m = 0; m <= 3; ++m) {
      if (i - static_cast<long>(m) < -K) continue;
      AlgebraElement word = sigma(from_ddt(ctx, i, m));
      auto terms = detail::ddt_expand(word);
      Rational total = 0;
      bool in_range = true;
      for (const auto& [key, coeff] : terms)
        if (std::labs(key.first) > K || key.second > 3) in_range = false;
      if (!in_range) continue;

      // Extract the weight-degree-zero coefficient in the falling basis: with
      // the word's own order m, that slot is exactly the order-m correction.
      Poly<Rational> weight_poly;
      for (const auto& [key, coeff] : terms) {
        Poly<Rational> acc;
        for (unsigned long mm = 0; mm <= key.second; ++mm) {
          UnknownId u{static_cast<int>(mm), key.first};
          auto it = family.values.find(u);
          if (it == family.values.end())
            throw std::out_of_range("sigma_image_family: value missing for " + format_unknown(u));
          acc = acc + Rational(binomial_int(key.second, mm)) * it->second *
                          detail::falling_poly(key.second - mm, 0);
        }
        weight_poly = weight_poly + coeff * acc;
      }
      long shift = i - static_cast<long>(m);
      Rational rebase = shift % 2 == 0 ? 1 : -1;

      // Convert the composed weight polynomial to the falling basis and read
      // off the order-m slot.
      Poly<Rational> remainder = weight_poly;
      std::vector<Rational> falling_coeffs(m + 1, Rational(0));
      while (!remainder.is_zero()) {
        long deg = remainder.degree();
        Rational lead = remainder.lc();
        remainder = remainder - lead * detail::falling_poly(static_cast<unsigned long>(deg), 0);
        if (static_cast<unsigned long>(deg) <= m)
          falling_coeffs[static_cast<std::size_t>(deg)] = lead;
      }
      image.values[UnknownId{static_cast<int>(m), i}] = rebase * falling_coeffs[0];
    }
  }
  return image;
}

}  // namespace weyl
