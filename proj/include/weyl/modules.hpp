#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weyl/algebra.hpp"
#include "weyl/extension.hpp"
#include "weyl/matrix.hpp"

namespace weyl {

/** Commuting family of p x p matrices, one per derivation direction. */
class MatrixTuple {
 public:
  MatrixTuple(std::size_t p, std::vector<Matrix> mats) : p_(p), mats_(std::move(mats)) {
    if (p_ == 0) throw std::invalid_argument("MatrixTuple: p must be positive");
    if (mats_.empty()) throw std::invalid_argument("MatrixTuple: empty tuple");
    for (const auto& m : mats_)
      if (m.rows() != p_ || m.cols() != p_)
        throw std::invalid_argument("MatrixTuple: matrix size differs from p");
    for (std::size_t i = 0; i < mats_.size(); ++i)
      for (std::size_t j = i + 1; j < mats_.size(); ++j)
        if (!commute(mats_[i], mats_[j]))
          throw std::invalid_argument("MatrixTuple: matrices must pairwise commute");
  }

  std::size_t p() const { return p_; }
  std::size_t n() const { return mats_.size(); }
  const Matrix& operator[](std::size_t i) const { return mats_[i]; }
  const std::vector<Matrix>& matrices() const { return mats_; }

  friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) {
    return a.p_ == b.p_ && a.mats_ == b.mats_;
  }

 private:
  std::size_t p_;
  std::vector<Matrix> mats_;
};

enum class ModuleKind { trivial, plain, twisted, direct_sum };

/**
 * Description of a graded module with finite-dimensional weight spaces: a
 * weight multiplication rule
 * (plain), its sign-twisted companion (twisted), a module with zero action
 * and declared grade dimensions (trivial), or a finite direct sum.
 */
class ModuleSpec {
 public:
  static ModuleSpec trivial(GroupContextPtr ctx, std::map<GroupElement, std::size_t> dims) {
    ModuleSpec s(ModuleKind::trivial, std::move(ctx));
    for (const auto& [beta, dim] : dims)
      if (dim > 0) s.dims_.emplace(beta, dim);
    return s;
  }
  static ModuleSpec plain(GroupContextPtr ctx, MatrixTuple g) {
    return weighted(ModuleKind::plain, std::move(ctx), std::move(g));
  }
  static ModuleSpec twisted(GroupContextPtr ctx, MatrixTuple g) {
    return weighted(ModuleKind::twisted, std::move(ctx), std::move(g));
  }
  static ModuleSpec direct_sum(std::vector<ModuleSpec> summands) {
    if (summands.empty()) throw std::invalid_argument("ModuleSpec: empty direct sum");
    ModuleSpec s(ModuleKind::direct_sum, summands.front().ctx_);
    for (const auto& part : summands)
      if (!(part.ctx_ == s.ctx_ || *part.ctx_ == *s.ctx_))
        throw std::domain_error("ModuleSpec: summand context mismatch");
    s.summands_ = std::move(summands);
    return s;
  }

  ModuleKind kind() const { return kind_; }
  const GroupContextPtr& context() const { return ctx_; }

  std::size_t p() const {
    require_weighted();
    return tuple_->p();
  }
  const MatrixTuple& tuple() const {
    require_weighted();
    return *tuple_;
  }
  const std::map<GroupElement, std::size_t>& trivial_dims() const {
    if (kind_ != ModuleKind::trivial)
      throw std::domain_error("ModuleSpec: not a trivial module");
    return dims_;
  }
  const std::vector<ModuleSpec>& summands() const {
    if (kind_ != ModuleKind::direct_sum)
      throw std::domain_error("ModuleSpec: not a direct sum");
    return summands_;
  }

  /// Dimension of the grade-beta weight space.
  std::size_t weight_space_dim(const GroupElement& beta) const {
    switch (kind_) {
      case ModuleKind::trivial: {
        auto it = dims_.find(beta);
        return it == dims_.end() ? 0 : it->second;
      }
      case ModuleKind::plain:
      case ModuleKind::twisted:
        return tuple_->p();
      case ModuleKind::direct_sum: {
        std::size_t total = 0;
        for (const auto& part : summands_) total += part.weight_space_dim(beta);
        return total;
      }
    }
    return 0;
  }

  friend bool operator==(const ModuleSpec& a, const ModuleSpec& b) {
    if (a.kind_ != b.kind_ || !(*a.ctx_ == *b.ctx_)) return false;
    switch (a.kind_) {
      case ModuleKind::trivial:
        return a.dims_ == b.dims_;
      case ModuleKind::plain:
      case ModuleKind::twisted:
        return *a.tuple_ == *b.tuple_;
      case ModuleKind::direct_sum:
        return a.summands_ == b.summands_;
    }
    return false;
  }

 private:
  ModuleSpec(ModuleKind kind, GroupContextPtr ctx) : kind_(kind), ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("ModuleSpec: null context");
  }
  static ModuleSpec weighted(ModuleKind kind, GroupContextPtr ctx, MatrixTuple g) {
    ModuleSpec s(kind, std::move(ctx));
    if (g.n() != s.ctx_->n())
      throw std::invalid_argument("ModuleSpec: tuple arity differs from context rank");
    s.tuple_.emplace(std::move(g));
    return s;
  }
  void require_weighted() const {
    if (kind_ != ModuleKind::plain && kind_ != ModuleKind::twisted)
      throw std::domain_error("ModuleSpec: kind carries no matrix tuple");
  }

  ModuleKind kind_;
  GroupContextPtr ctx_;
  std::optional<MatrixTuple> tuple_;
  std::map<GroupElement, std::size_t> dims_;
  std::vector<ModuleSpec> summands_;
};

/** Finitely supported vector: coefficients indexed by (grade, component). */
class ModuleVector {
 public:
  using Key = std::pair<GroupElement, std::size_t>;

  explicit ModuleVector(GroupContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("ModuleVector: null context");
  }

  static ModuleVector basis(const GroupElement& beta, std::size_t component,
                            const Scalar& value = Scalar(1)) {
    ModuleVector v(beta.context());
    v.add(beta, component, value);
    return v;
  }

  const GroupContextPtr& context() const { return ctx_; }
  const std::map<Key, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  void add(const GroupElement& beta, std::size_t component, const Scalar& value) {
    if (value.is_zero()) return;
    Key k{beta, component};
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      entries_.emplace(std::move(k), value);
      return;
    }
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }

  friend ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
    ModuleVector r = x;
    for (const auto& [k, v] : y.entries_) r.add(k.first, k.second, v);
    return r;
  }
  friend ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) {
    ModuleVector r = x;
    for (const auto& [k, v] : y.entries_) r.add(k.first, k.second, -v);
    return r;
  }
  friend ModuleVector operator*(const Scalar& c, const ModuleVector& x) {
    ModuleVector r(x.ctx_);
    for (const auto& [k, v] : x.entries_) r.add(k.first, k.second, c * v);
    return r;
  }
  friend bool operator==(const ModuleVector& x, const ModuleVector& y) {
    return x.entries_ == y.entries_;
  }
  friend bool operator!=(const ModuleVector& x, const ModuleVector& y) { return !(x == y); }

 private:
  GroupContextPtr ctx_;
  std::map<Key, Scalar> entries_;
};

namespace detail {

/// Weight matrix [point·1 + G]^mu = prod_i (point_i I + G_i)^{mu_i}.
inline Matrix weight_matrix(const MatrixTuple& g, const GroupElement& point,
                            const std::vector<unsigned long>& mu) {
  Matrix m = Matrix::identity(g.p());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0) continue;
    Matrix base = Matrix::scalar(g.p(), point[i]) + g[i];
    for (unsigned long k = 0; k < mu[i]; ++k) m = m * base;
  }
  return m;
}

inline void act_term(const ModuleSpec& spec, const Monomial& mono, const Scalar& coeff,
                     const GroupElement& beta, std::size_t component, const Scalar& value,
                     std::size_t offset, ModuleVector& out) {
  switch (spec.kind()) {
    case ModuleKind::trivial:
      return;
    case ModuleKind::plain:
    case ModuleKind::twisted: {
      GroupElement target = mono.alpha + beta;
      bool twisted = spec.kind() == ModuleKind::twisted;
      Matrix m = weight_matrix(spec.tuple(), twisted ? target : beta, mono.mu);
      Scalar factor = coeff * value;
      if (twisted && mono.level() % 2 == 0) factor = -factor;
      for (std::size_t i = 0; i < spec.p(); ++i)
        out.add(target, offset + i, factor * m.at(i, component));
      return;
    }
    case ModuleKind::direct_sum: {
      std::size_t local = component;
      for (const auto& part : spec.summands()) {
        std::size_t dim = part.weight_space_dim(beta);
        if (local < dim) {
          act_term(part, mono, coeff, beta, local, value, offset, out);
          return;
        }
        local -= dim;
        offset += part.weight_space_dim(mono.alpha + beta);
      }
      throw std::out_of_range("act: component exceeds the weight space dimension");
    }
  }
}

}  // namespace detail

/**
 * Module action.  Plain: (t^a D^mu) y_b = y_{a+b} [b·1+G]^mu with the weight
 * matrix applied to coefficient columns; twisted picks up (-1)^{level+1} and
 * reads the weight at the target grade; trivial kills everything.
 */
inline ModuleVector act(const ModuleSpec& spec, const AlgebraElement& x, const ModuleVector& v) {
  if (!(spec.context() == x.context() || *spec.context() == *x.context()) ||
      !(spec.context() == v.context() || *spec.context() == *v.context()))
    throw std::domain_error("act: context mismatch");
  ModuleVector out(spec.context());
  for (const auto& [key, value] : v.entries()) {
    if (key.second >= spec.weight_space_dim(key.first))
      throw std::out_of_range("act: component exceeds the weight space dimension");
    for (const auto& [mono, coeff] : x.terms())
      detail::act_term(spec, mono, coeff, key.first, key.second, value, 0, out);
  }
  return out;
}

/// Action of the extension: the central generator acts as zero.
inline ModuleVector act_extended(const ModuleSpec& spec, const ExtendedElement& x,
                                 const ModuleVector& v) {
  return act(spec, x.body(), v);
}

inline bool is_indecomposable_spec(const ModuleSpec& spec) {
  if (spec.kind() != ModuleKind::plain && spec.kind() != ModuleKind::twisted)
    throw std::domain_error("is_indecomposable_spec: plain or twisted kind required");
  const FieldContext& field = spec.context()->field();
  for (const Matrix& g : spec.tuple().matrices())
    if (is_indecomposable_matrix(g, field)) return true;
  return false;
}

inline bool is_irreducible(const ModuleSpec& spec) {
  switch (spec.kind()) {
    case ModuleKind::plain:
    case ModuleKind::twisted:
      return spec.p() == 1;
    case ModuleKind::direct_sum:
      return false;
    case ModuleKind::trivial:
      throw std::domain_error("is_irreducible: criterion applies to weight kinds only");
  }
  return false;
}

inline std::size_t weight_space_dim(const ModuleSpec& spec, const GroupElement& beta) {
  return spec.weight_space_dim(beta);
}

inline ModuleSpec direct_sum(std::vector<ModuleSpec> summands) {
  return ModuleSpec::direct_sum(std::move(summands));
}

}  // namespace weyl
