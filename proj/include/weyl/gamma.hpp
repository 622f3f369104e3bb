#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weyl/intlinalg.hpp"
#include "weyl/scalar.hpp"

namespace weyl {

/** Coefficient tuple (d_1, ..., d_n) of a derivation d = sum d_i D_i. */
struct DerivationVector {
  std::vector<Scalar> coeffs;
};

/**
 * Additive subgroup of F^n given by a finite generator list: the exponent
 * group of the algebra. Membership means integer-combination membership in
 * the generator lattice, decided through a Smith reduction of the generator
 * matrix split into rational coordinates.
 */
class GroupContext {
 public:
  GroupContext(std::size_t n, const FieldContext& field,
               std::vector<std::vector<Scalar>> generators)
      : n_(n), field_(field), generators_(std::move(generators)) {
    if (n_ == 0) throw std::invalid_argument("GroupContext: n must be positive");
    if (generators_.empty())
      throw std::invalid_argument("GroupContext: at least one generator required");
    for (const auto& g : generators_) {
      if (g.size() != n_)
        throw std::invalid_argument("GroupContext: generator arity mismatch");
      for (const auto& c : g)
        if (!c.is_rational() && c.d() != field_.d())
          throw std::invalid_argument("GroupContext: generator entry outside the field");
    }
    build_lattice();
  }

  std::size_t n() const { return n_; }
  const FieldContext& field() const { return field_; }
  const std::vector<std::vector<Scalar>>& generators() const { return generators_; }

  friend bool operator==(const GroupContext& x, const GroupContext& y) {
    return x.n_ == y.n_ && x.field_ == y.field_ && x.generators_ == y.generators_;
  }

  /// Integer coefficients expressing v in the generators, if any.
  std::optional<std::vector<Integer>> membership(const std::vector<Scalar>& v) const {
    if (v.size() != n_) throw std::invalid_argument("membership: arity mismatch");
    const std::size_t rows = split_rows();
    std::vector<Integer> b(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      Rational scaled = split_coord(v, r) * Rational(row_scale_[r]);
      if (scaled.get_den() != 1) return std::nullopt;
      b[r] = scaled.get_num();
    }
    auto x = solve_integer(smith_, rows, generators_.size(), b);
    if (!x) return std::nullopt;
    // certify by substitution
    std::vector<Scalar> acc(n_, Scalar(0));
    for (std::size_t k = 0; k < generators_.size(); ++k)
      for (std::size_t c = 0; c < n_; ++c) acc[c] += Scalar(Rational((*x)[k])) * generators_[k][c];
    for (std::size_t c = 0; c < n_; ++c)
      if (!(acc[c] == v[c])) return std::nullopt;
    return x;
  }

  bool contains(const std::vector<Scalar>& v) const { return membership(v).has_value(); }

  /// Rank of the group as a free abelian group (Q-dimension of its span).
  std::size_t rank() const { return smith_.rank; }
  bool is_isomorphic_to_Z() const { return rank() == 1; }

  /// Do the generators span F^n over F?
  bool is_nondegenerate() const { return rank_over_field_ == n_; }

 private:
  std::size_t split_rows() const { return field_.rational_only() ? n_ : 2 * n_; }

  Rational split_coord(const std::vector<Scalar>& v, std::size_t row) const {
    if (field_.rational_only()) return v[row].rational_part();
    return row % 2 == 0 ? v[row / 2].rational_part() : v[row / 2].sqrt_part();
  }

  void build_lattice() {
    const std::size_t rows = split_rows();
    const std::size_t m = generators_.size();
    std::vector<std::vector<Rational>> mq(rows, std::vector<Rational>(m));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < m; ++k) mq[r][k] = split_coord(generators_[k], r);

    row_scale_.assign(rows, Integer(1));
    IntMatrix mz(rows, std::vector<Integer>(m));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < m; ++k)
        mpz_lcm(row_scale_[r].get_mpz_t(), row_scale_[r].get_mpz_t(),
                mq[r][k].get_den().get_mpz_t());
      for (std::size_t k = 0; k < m; ++k) {
        Rational scaled = mq[r][k] * Rational(row_scale_[r]);
        mz[r][k] = scaled.get_num();
      }
    }
    smith_ = smith_normal_form(std::move(mz));
    rank_over_field_ = field_rank();
  }

  // Gaussian elimination over F on the m x n generator matrix.
  std::size_t field_rank() const {
    std::vector<std::vector<Scalar>> m = generators_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_ && rank < m.size(); ++col) {
      std::size_t pivot = rank;
      while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
      if (pivot == m.size()) continue;
      std::swap(m[rank], m[pivot]);
      Scalar inv = m[rank][col].inverse();
      for (std::size_t c = 0; c < n_; ++c) m[rank][c] *= inv;
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == rank || m[r][col].is_zero()) continue;
        Scalar f = m[r][col];
        for (std::size_t c = 0; c < n_; ++c) m[r][c] -= f * m[rank][c];
      }
      ++rank;
    }
    return rank;
  }

  std::size_t n_;
  FieldContext field_;
  std::vector<std::vector<Scalar>> generators_;
  std::vector<Integer> row_scale_;
  SmithForm smith_;
  std::size_t rank_over_field_ = 0;
};

using GroupContextPtr = std::shared_ptr<const GroupContext>;

/** Point of the exponent group; construction certifies lattice membership. */
class GroupElement {
 public:
  GroupElement(GroupContextPtr ctx, std::vector<Scalar> coords)
      : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    if (!ctx_) throw std::invalid_argument("GroupElement: null context");
    if (!ctx_->contains(coords_))
      throw std::domain_error("GroupElement: point outside the group lattice");
  }

  static GroupElement unchecked(GroupContextPtr ctx, std::vector<Scalar> coords) {
    GroupElement g;
    g.ctx_ = std::move(ctx);
    g.coords_ = std::move(coords);
    return g;
  }

  static GroupElement zero(const GroupContextPtr& ctx) {
    return unchecked(ctx, std::vector<Scalar>(ctx->n(), Scalar(0)));
  }

  const GroupContextPtr& context() const { return ctx_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t n() const { return coords_.size(); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  std::optional<std::vector<Integer>> lattice_coefficients() const {
    return ctx_->membership(coords_);
  }

  friend GroupElement operator+(const GroupElement& x, const GroupElement& y) {
    require_same_context(x, y);
    std::vector<Scalar> c(x.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords_[i] + y.coords_[i];
    return unchecked(x.ctx_, std::move(c));
  }
  friend GroupElement operator-(const GroupElement& x, const GroupElement& y) {
    require_same_context(x, y);
    std::vector<Scalar> c(x.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords_[i] - y.coords_[i];
    return unchecked(x.ctx_, std::move(c));
  }
  GroupElement operator-() const {
    std::vector<Scalar> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return unchecked(ctx_, std::move(c));
  }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.coords_ == y.coords_;
  }
  friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }

  /// Lexicographic on coordinates, each scalar by its (a, b) key.
  friend bool operator<(const GroupElement& x, const GroupElement& y) {
    for (std::size_t i = 0; i < x.coords_.size() && i < y.coords_.size(); ++i) {
      int c = x.coords_[i].compare_key(y.coords_[i]);
      if (c != 0) return c < 0;
    }
    return x.coords_.size() < y.coords_.size();
  }

  static void require_same_context(const GroupElement& x, const GroupElement& y) {
    if (!(x.ctx_ == y.ctx_ || *x.ctx_ == *y.ctx_))
      throw std::domain_error("GroupElement: context mismatch");
  }

 private:
  GroupElement() = default;

  GroupContextPtr ctx_;
  std::vector<Scalar> coords_;
};

inline Scalar inner_product(const GroupElement& alpha, const DerivationVector& d) {
  if (alpha.n() != d.coeffs.size())
    throw std::invalid_argument("inner_product: arity mismatch");
  Scalar acc(0);
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) acc += alpha[i] * d.coeffs[i];
  return acc;
}

// --- convenience builders ---------------------------------------------------

/// Z^n with the standard basis over Q.
inline GroupContextPtr integer_lattice(std::size_t n) {
  std::vector<std::vector<Scalar>> gens(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) gens[i][i] = Scalar(1);
  return std::make_shared<GroupContext>(n, FieldContext(0), std::move(gens));
}

/// Z + Z*sqrt(d) inside Q(sqrt(d)), n = 1.
inline GroupContextPtr quadratic_lattice(unsigned long d) {
  FieldContext f(d);
  std::vector<std::vector<Scalar>> gens = {{Scalar(1)}, {Scalar::sqrt_of(f)}};
  return std::make_shared<GroupContext>(1, f, std::move(gens));
}

inline GroupElement group_point(const GroupContextPtr& ctx, std::vector<long> ints) {
  std::vector<Scalar> c;
  c.reserve(ints.size());
  for (long v : ints) c.emplace_back(v);
  return GroupElement(ctx, std::move(c));
}

}  // namespace weyl
