#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weyl/action_table.hpp"
#include "weyl/extension.hpp"
#include "weyl/modules.hpp"
#include "weyl/random.hpp"

namespace weyl {

struct SuiteResult {
  std::string name;
  unsigned long passed = 0;
  unsigned long failed = 0;
  std::vector<std::string> failures;

  bool ok() const { return failed == 0; }
  unsigned long total() const { return passed + failed; }
};

namespace detail {

constexpr std::size_t kMaxRecordedFailures = 5;

template <class Fn>
SuiteResult run_trials(std::string name, unsigned long trials, unsigned long seed, Fn&& trial) {
  SuiteResult result;
  result.name = std::move(name);
  Sampler sampler(seed);
  for (unsigned long t = 0; t < trials; ++t) {
    std::string what;
    if (trial(sampler, what)) {
      ++result.passed;
    } else {
      ++result.failed;
      if (result.failures.size() < kMaxRecordedFailures)
        result.failures.push_back("trial " + std::to_string(t) + ": " + what);
    }
  }
  return result;
}

inline void record(SuiteResult& result, bool ok, const std::string& what) {
  if (ok) {
    ++result.passed;
    return;
  }
  ++result.failed;
  if (result.failures.size() < kMaxRecordedFailures) result.failures.push_back(what);
}

inline const std::vector<GroupContextPtr>& verify_contexts() {
  static const std::vector<GroupContextPtr> contexts = {integer_lattice(1), integer_lattice(2),
                                                        quadratic_lattice(2)};
  return contexts;
}

inline AlgebraElement t_int(const GroupContextPtr& ctx, long k) {
  return AlgebraElement::t_power(GroupElement(ctx, {Scalar(k)}));
}

inline MatrixTuple sample_commuting_tuple(Sampler& s, const FieldContext& field, std::size_t p,
                                          std::size_t n, long bound) {
  Matrix base = s.matrix(field, p, bound);
  std::vector<Matrix> mats = {base};
  for (std::size_t k = 1; k < n; ++k) {
    Matrix m = s.scalar(field, bound) * Matrix::identity(p) + s.scalar(field, bound) * base;
    mats.push_back(std::move(m));
  }
  return MatrixTuple(p, std::move(mats));
}

inline ModuleSpec sample_weight_spec(Sampler& s, const GroupContextPtr& ctx, bool twisted,
                                     std::size_t max_p, long bound) {
  std::size_t p = 1 + s.below(max_p);
  MatrixTuple tuple = sample_commuting_tuple(s, ctx->field(), p, ctx->n(), bound);
  return twisted ? ModuleSpec::twisted(ctx, std::move(tuple))
                 : ModuleSpec::plain(ctx, std::move(tuple));
}

inline ModuleSpec sample_module_spec(Sampler& s, const GroupContextPtr& ctx, std::size_t which) {
  switch (which % 4) {
    case 0:
      return sample_weight_spec(s, ctx, false, 3, 3);
    case 1:
      return sample_weight_spec(s, ctx, true, 3, 3);
    case 2: {
      std::map<GroupElement, std::size_t> dims;
      for (int k = 0; k < 3; ++k) dims[s.point(ctx, 3)] = 1 + s.below(2);
      return ModuleSpec::trivial(ctx, std::move(dims));
    }
    default:
      return ModuleSpec::direct_sum({sample_weight_spec(s, ctx, false, 2, 3),
                                     sample_weight_spec(s, ctx, true, 2, 3)});
  }
}

inline ModuleVector sample_vector(Sampler& s, const ModuleSpec& spec, std::size_t entries) {
  ModuleVector v(spec.context());
  for (std::size_t k = 0; k < entries; ++k) {
    GroupElement beta = s.point(spec.context(), 3);
    std::size_t dim = spec.weight_space_dim(beta);
    if (dim == 0) continue;
    v.add(beta, s.below(dim), s.nonzero_scalar(spec.context()->field(), 4));
  }
  return v;
}

inline SuiteResult suite_assoc(unsigned long trials, unsigned long seed) {
  return run_trials("assoc", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      AlgebraElement x = s.element(ctx, 3, 4, 5);
      AlgebraElement y = s.element(ctx, 3, 4, 5);
      AlgebraElement z = s.element(ctx, 3, 4, 5);
      if ((x * y) * z != x * (y * z)) {
        what = "associativity failed over a rank-" + std::to_string(ctx->n()) + " context";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_jacobi(unsigned long trials, unsigned long seed) {
  return run_trials("jacobi", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      AlgebraElement x = s.element(ctx, 3, 4, 5);
      AlgebraElement y = s.element(ctx, 3, 4, 5);
      AlgebraElement z = s.element(ctx, 3, 4, 5);
      AlgebraElement total = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) +
                             bracket(bracket(z, x), y);
      if (!total.is_zero()) {
        what = "Jacobi failed over a rank-" + std::to_string(ctx->n()) + " context";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_grading(unsigned long trials, unsigned long seed) {
  return run_trials("grading", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      GroupElement a = s.point(ctx, 4);
      GroupElement b = s.point(ctx, 4);
      AlgebraElement x =
          AlgebraElement::term(a, s.exponents(ctx->n(), 3), s.nonzero_scalar(ctx->field(), 4));
      AlgebraElement y =
          AlgebraElement::term(b, s.exponents(ctx->n(), 3), s.nonzero_scalar(ctx->field(), 4));
      for (const AlgebraElement& out : {x * y, bracket(x, y)})
        for (const auto& entry : out.terms())
          if (!(entry.first.alpha == a + b)) {
            what = "a product term left the expected grade";
            return false;
          }
    }
    return true;
  });
}

inline SuiteResult suite_sigma(unsigned long trials, unsigned long seed) {
  return run_trials("sigma", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      AlgebraElement x = s.element(ctx, 3, 4, 5);
      AlgebraElement y = s.element(ctx, 3, 4, 5);
      if (sigma(sigma(x)) != x) {
        what = "sigma failed to be an involution";
        return false;
      }
      if (sigma(bracket(x, y)) != bracket(sigma(x), sigma(y))) {
        what = "sigma failed to respect the bracket";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_falling(unsigned long trials, unsigned long seed) {
  return run_trials("falling", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      AlgebraElement x = s.element(ctx, 3, 4, 5);
      if (from_falling(to_falling(x)) != x) {
        what = "falling-basis conversion failed to round trip";
        return false;
      }
    }
    auto ctx = integer_lattice(1);
    long i = s.range(-4, 4);
    unsigned long j = s.below(4);
    AlgebraElement word = from_ddt(ctx, i, j);
    FallingElement f = to_falling(word);
    if (f.terms().size() > 1) {
      what = "a differential word spread over several falling monomials";
      return false;
    }
    return true;
  });
}

inline SuiteResult suite_scalars(unsigned long trials, unsigned long seed) {
  return run_trials("scalars", trials, seed, [](Sampler& s, std::string& what) {
    for (const FieldContext& field : {FieldContext(), FieldContext(2), FieldContext(5)}) {
      Scalar a = s.scalar(field, 6);
      Scalar b = s.scalar(field, 6);
      Scalar c = s.scalar(field, 6);
      if ((a + b) * c != a * c + b * c) {
        what = "distributivity failed";
        return false;
      }
      Scalar nz = s.nonzero_scalar(field, 6);
      if (nz * (Scalar(1) / nz) != Scalar(1)) {
        what = "a nonzero scalar had no working inverse";
        return false;
      }
      if (!field.rational_only()) {
        Scalar root = Scalar::sqrt_of(field);
        if (root * root != Scalar(Rational(field.d()))) {
          what = "sqrt(d) squared missed d";
          return false;
        }
      }
      if (parse_scalar(format_scalar(a), field) != a) {
        what = "scalar text form failed to round trip";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_membership(unsigned long trials, unsigned long seed) {
  return run_trials("membership", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : verify_contexts()) {
      GroupElement g = s.point(ctx, 5);
      auto coeffs = g.lattice_coefficients();
      if (!coeffs) {
        what = "a lattice point produced no integer coordinates";
        return false;
      }
      std::vector<Scalar> rebuilt(ctx->n(), Scalar(0));
      for (std::size_t k = 0; k < coeffs->size(); ++k)
        for (std::size_t c = 0; c < ctx->n(); ++c)
          rebuilt[c] = rebuilt[c] + Scalar(Rational((*coeffs)[k])) * ctx->generators()[k][c];
      if (!(GroupElement::unchecked(ctx, rebuilt) == g)) {
        what = "integer coordinates failed to rebuild the point";
        return false;
      }
      std::vector<Scalar> shifted;
      for (std::size_t c = 0; c < ctx->n(); ++c) shifted.push_back(g[c]);
      shifted[0] = shifted[0] + Scalar(Rational(1, 2));
      bool rejected = false;
      try {
        GroupElement bad(ctx, shifted);
      } catch (const std::domain_error&) {
        rejected = true;
      }
      if (!rejected) {
        what = "a half-step point was accepted as a lattice member";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_extended(unsigned long trials, unsigned long seed) {
  return run_trials("extended", trials, seed, [](Sampler& s, std::string& what) {
    for (const auto& ctx : {integer_lattice(1), quadratic_lattice(2)}) {
      ExtendedElement x(s.element(ctx, 3, 3, 4), s.scalar(ctx->field(), 4));
      ExtendedElement y(s.element(ctx, 3, 3, 4), s.scalar(ctx->field(), 4));
      ExtendedElement z(s.element(ctx, 3, 3, 4), s.scalar(ctx->field(), 4));
      if (!(extended_bracket(x, y) + extended_bracket(y, x)).is_zero()) {
        what = "extended bracket lost antisymmetry";
        return false;
      }
      ExtendedElement total = extended_bracket(x, extended_bracket(y, z)) +
                              extended_bracket(y, extended_bracket(z, x)) +
                              extended_bracket(z, extended_bracket(x, y));
      if (!total.is_zero()) {
        what = "extended bracket lost Jacobi";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_module_lie(unsigned long trials, unsigned long seed) {
  return run_trials("module-lie", trials, seed, [](Sampler& s, std::string& what) {
    const auto& contexts = verify_contexts();
    for (std::size_t which = 0; which < 4; ++which) {
      const auto& ctx = contexts[s.below(contexts.size())];
      ModuleSpec spec = sample_module_spec(s, ctx, which);
      AlgebraElement x = s.element(ctx, 2, 2, 3);
      AlgebraElement y = s.element(ctx, 2, 2, 3);
      ModuleVector v = sample_vector(s, spec, 2);
      ModuleVector lhs = act(spec, bracket(x, y), v);
      ModuleVector rhs = act(spec, x, act(spec, y, v)) - act(spec, y, act(spec, x, v));
      if (!(lhs == rhs)) {
        what = "the bracket action disagreed with the action commutator";
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult suite_module_assoc(unsigned long trials, unsigned long seed) {
  return run_trials("module-assoc", trials, seed, [](Sampler& s, std::string& what) {
    const auto& contexts = verify_contexts();
    const auto& ctx = contexts[s.below(contexts.size())];
    ModuleSpec plain = sample_weight_spec(s, ctx, false, 3, 3);
    AlgebraElement x = s.element(ctx, 2, 2, 3);
    AlgebraElement y = s.element(ctx, 2, 2, 3);
    ModuleVector v = sample_vector(s, plain, 2);
    if (!(act(plain, x * y, v) == act(plain, x, act(plain, y, v)))) {
      what = "the weight action failed the associative law";
      return false;
    }

    ModuleSpec twisted = sample_weight_spec(s, ctx, true, 3, 3);
    AlgebraElement t = AlgebraElement::t_power(GroupElement(ctx, ctx->generators()[0]));
    ModuleVector e = ModuleVector::basis(GroupElement::zero(ctx), 0);
    ModuleVector once = act(twisted, t, act(twisted, t, e));
    ModuleVector both = act(twisted, t * t, e);
    if (both == once) {
      what = "the twisted action unexpectedly satisfied the associative law";
      return false;
    }
    if (!(both == Scalar(-1) * once)) {
      what = "the twisted square acted with the wrong sign";
      return false;
    }
    return true;
  });
}

inline SuiteResult suite_intertwine(unsigned long trials, unsigned long seed) {
  return run_trials("intertwine", trials, seed, [](Sampler& s, std::string& what) {
    const auto& contexts = verify_contexts();
    const auto& ctx = contexts[s.below(contexts.size())];
    std::size_t p = 1 + s.below(3);
    MatrixTuple tuple = sample_commuting_tuple(s, ctx->field(), p, ctx->n(), 3);
    ModuleSpec plain = ModuleSpec::plain(ctx, tuple);
    ModuleSpec twisted = ModuleSpec::twisted(ctx, tuple);
    AlgebraElement x = s.element(ctx, 3, 3, 4);
    ModuleVector v = sample_vector(s, plain, 2);
    if (!(act(twisted, x, v) == act(plain, sigma(x), v))) {
      what = "the twisted action disagreed with acting through sigma";
      return false;
    }
    return true;
  });
}

inline SuiteResult suite_identities(unsigned long, unsigned long) {
  SuiteResult result;
  result.name = "identities";
  auto ctx = integer_lattice(1);

  record(result, bracket(from_ddt(ctx, 0, 1), t_int(ctx, 2)) == Scalar(2) * t_int(ctx, 1),
         "[d/dt, t^2] missed 2t");

  for (long i = -3; i <= 3; ++i)
    for (long j = -3; j <= 3; ++j)
      record(result,
             bracket(from_ddt(ctx, i, 1), t_int(ctx, j)) == Scalar(j) * t_int(ctx, i + j - 1),
             "[t^i d/dt, t^j] missed j t^{i+j-1} at i=" + std::to_string(i) +
                 ", j=" + std::to_string(j));

  for (long i = -4; i <= 4; ++i)
    for (unsigned long j = 0; j <= 3; ++j) {
      AlgebraElement w = from_ddt(ctx, i + static_cast<long>(j), j);
      record(result, bracket(from_ddt(ctx, 1, 1), w) == Scalar(i) * w,
             "the Euler word missed eigenvalue " + std::to_string(i));
    }

  for (long i = -4; i <= 4; ++i)
    for (long k = -4; k <= 4; ++k)
      for (unsigned long j = 0; j <= 3; ++j)
        for (unsigned long l = 0; l <= 3; ++l) {
          AlgebraElement lhs = bracket(from_ddt(ctx, i, j), from_ddt(ctx, k, l));
          AlgebraElement rhs(ctx);
          for (unsigned long u = 1; u <= j + l; ++u) {
            Scalar c = Scalar(Rational(binomial_int(j, u))) * falling_factorial(Scalar(k), u) -
                       Scalar(Rational(binomial_int(l, u))) * falling_factorial(Scalar(i), u);
            if (c.is_zero()) continue;
            rhs = rhs + c * from_ddt(ctx, i + k - static_cast<long>(u), j + l - u);
          }
          record(result, lhs == rhs,
                 "the combinatorial bracket form failed at (" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")");
        }

  AlgebraElement w2 = from_ddt(ctx, 1, 2), w3 = from_ddt(ctx, 1, 3);
  for (long i = -5; i <= 5; ++i) {
    AlgebraElement lhs = Scalar(3) * bracket(w2, bracket(w2, t_int(ctx, i))) -
                         Scalar(2 * (2 * i - 1)) * bracket(w3, t_int(ctx, i)) +
                         falling_factorial(Scalar(i + 1), 4) * t_int(ctx, i - 2);
    record(result, lhs.is_zero(),
           "the fourth-order contraction failed at i=" + std::to_string(i));
  }

  return result;
}

inline SuiteResult suite_recognizer(unsigned long trials, unsigned long seed) {
  return run_trials("recognizer", trials, seed, [](Sampler& s, std::string& what) {
    const auto& ctx = s.chance(1, 2) ? integer_lattice(1) : integer_lattice(2);
    bool twisted = s.chance(1, 2);
    ModuleSpec spec = sample_weight_spec(s, ctx, twisted, 3, 3);
    ActionTable table = table_from_spec(spec, make_box_window(ctx, 4));
    RecognitionResult rec = recognize(table);
    if (rec.kind != (twisted ? RecognizedKind::twisted : RecognizedKind::plain)) {
      what = "the recognizer reported the wrong kind";
      return false;
    }
    if (!rec.spec || rec.spec->p() != spec.p()) {
      what = "the recognizer reported the wrong multiplicity";
      return false;
    }
    for (std::size_t i = 0; i < ctx->n(); ++i)
      if (rational_canonical_form(rec.spec->tuple()[i]) !=
          rational_canonical_form(spec.tuple()[i])) {
        what = "a recovered weight matrix had the wrong canonical form";
        return false;
      }
    if (!(regenerate(rec, table.window()) == table)) {
      what = "regeneration from the recognized spec changed the table";
      return false;
    }
    return true;
  });
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "assoc",      "jacobi",       "grading",    "sigma",      "falling",
      "scalars",    "membership",   "extended",   "module-lie", "module-assoc",
      "intertwine", "identities",   "recognizer",
  };
  return names;
}

inline SuiteResult run_suite(const std::string& name, unsigned long trials, unsigned long seed) {
  const auto& names = suite_names();
  std::size_t index = 0;
  while (index < names.size() && names[index] != name) ++index;
  unsigned long mixed = seed + 1000003UL * static_cast<unsigned long>(index);
  if (name == "assoc") return detail::suite_assoc(trials, mixed);
  if (name == "jacobi") return detail::suite_jacobi(trials, mixed);
  if (name == "grading") return detail::suite_grading(trials, mixed);
  if (name == "sigma") return detail::suite_sigma(trials, mixed);
  if (name == "falling") return detail::suite_falling(trials, mixed);
  if (name == "scalars") return detail::suite_scalars(trials, mixed);
  if (name == "membership") return detail::suite_membership(trials, mixed);
  if (name == "extended") return detail::suite_extended(trials, mixed);
  if (name == "module-lie") return detail::suite_module_lie(trials, mixed);
  if (name == "module-assoc") return detail::suite_module_assoc(trials, mixed);
  if (name == "intertwine") return detail::suite_intertwine(trials, mixed);
  if (name == "identities") return detail::suite_identities(trials, mixed);
  if (name == "recognizer") return detail::suite_recognizer(trials, mixed);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> run_suites(const std::string& name, unsigned long trials,
                                           unsigned long seed) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& each : suite_names()) out.push_back(run_suite(each, trials, seed));
    return out;
  }
  out.push_back(run_suite(name, trials, seed));
  return out;
}

}  // namespace weyl
