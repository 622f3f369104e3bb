#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "weyl/algebra.hpp"
#include "weyl/modules.hpp"

namespace weyl {

/**
 * Deterministic sample source.  All derived draws reduce mt19937_64 output
 * with plain modulo so that a seed fixes the entire stream across platforms;
 * the slight bias is irrelevant here.
 */
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t raw() { return rng_(); }

  unsigned long below(unsigned long bound) {
    return bound == 0 ? 0 : static_cast<unsigned long>(rng_() % bound);
  }

  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<unsigned long>(hi - lo + 1)));
  }

  bool chance(unsigned long num, unsigned long den) { return below(den) < num; }

  Scalar scalar(const FieldContext& field, long bound) {
    Rational a(range(-bound, bound));
    if (field.rational_only() || chance(1, 2)) return Scalar(a);
    return Scalar(a, Rational(range(-bound, bound)), field);
  }

  Scalar nonzero_scalar(const FieldContext& field, long bound) {
    for (;;) {
      Scalar s = scalar(field, bound);
      if (!s.is_zero()) return s;
    }
  }

  /// Random lattice point: a small integer combination of the generators.
  GroupElement point(const GroupContextPtr& ctx, long coeff_bound) {
    std::vector<Scalar> coords(ctx->n(), Scalar(0));
    for (const auto& gen : ctx->generators()) {
      long c = range(-coeff_bound, coeff_bound);
      if (c == 0) continue;
      for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] += Scalar(c) * gen[i];
    }
    return GroupElement::unchecked(ctx, std::move(coords));
  }

  std::vector<unsigned long> exponents(std::size_t n, unsigned long max_level) {
    std::vector<unsigned long> mu(n, 0);
    unsigned long total = below(max_level + 1);
    for (unsigned long k = 0; k < total; ++k) ++mu[below(n)];
    return mu;
  }

  AlgebraElement element(const GroupContextPtr& ctx, unsigned long max_terms,
                         unsigned long max_level, long coeff_bound) {
    AlgebraElement x(ctx);
    unsigned long terms = 1 + below(max_terms);
    for (unsigned long k = 0; k < terms; ++k)
      x.add_term(Monomial{point(ctx, 2), exponents(ctx->n(), max_level)},
                 scalar(ctx->field(), coeff_bound));
    return x;
  }

  Matrix matrix(const FieldContext& field, std::size_t p, long bound) {
    Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) m.at(i, j) = scalar(field, bound);
    return m;
  }

  /// Commuting tuple: the first matrix is free, the rest are polynomials in it.
  MatrixTuple commuting_tuple(const FieldContext& field, std::size_t p, std::size_t n,
                              long bound) {
    std::vector<Matrix> mats;
    mats.push_back(matrix(field, p, bound));
    for (std::size_t k = 1; k < n; ++k) {
      Matrix g = Matrix::scalar(p, scalar(field, bound));
      Matrix power = Matrix::identity(p);
      for (int deg = 0; deg < 2; ++deg) {
        power = power * mats.front();
        g = g + scalar(field, bound) * power;
      }
      mats.push_back(g);
    }
    return MatrixTuple(p, std::move(mats));
  }

  ModuleVector module_vector(const ModuleSpec& spec, unsigned long max_entries, long coeff_bound) {
    ModuleVector v(spec.context());
    unsigned long entries = 1 + below(max_entries);
    for (unsigned long k = 0; k < entries; ++k) {
      GroupElement beta = point(spec.context(), 2);
      std::size_t dim = spec.weight_space_dim(beta);
      if (dim == 0) continue;
      v.add(beta, below(dim), scalar(spec.context()->field(), coeff_bound));
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace weyl
