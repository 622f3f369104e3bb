#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "weyl/modules.hpp"

namespace weyl {

/// One generator of the sampled action data: t^{±γ_k}, t^{±γ_k}·D_i, or D_i,
/// where γ_k runs over the group's stored generators.
struct GenKey {
  int t_dir = 0;
  std::size_t t_gen = 0;
  bool has_d = false;
  std::size_t d_index = 0;

  static GenKey t(std::size_t gen, int dir) {
    if (dir != 1 && dir != -1) throw std::invalid_argument("GenKey: direction must be ±1");
    GenKey key;
    key.t_dir = dir;
    key.t_gen = gen;
    return key;
  }
  static GenKey t_d(std::size_t gen, int dir, std::size_t i) {
    GenKey key = t(gen, dir);
    key.has_d = true;
    key.d_index = i;
    return key;
  }
  static GenKey d(std::size_t i) {
    GenKey key;
    key.has_d = true;
    key.d_index = i;
    return key;
  }

  friend bool operator==(const GenKey& a, const GenKey& b) {
    return a.t_dir == b.t_dir && a.t_gen == b.t_gen && a.has_d == b.has_d &&
           a.d_index == b.d_index;
  }
  friend bool operator<(const GenKey& a, const GenKey& b) {
    auto category = [](const GenKey& g) { return g.t_dir == 0 ? 2 : (g.has_d ? 1 : 0); };
    auto key = [&](const GenKey& g) {
      return std::make_tuple(category(g), g.t_gen, -g.t_dir, g.d_index);
    };
    return key(a) < key(b);
  }
};

inline std::string format_gen(const GenKey& key) {
  std::string out;
  if (key.t_dir != 0) {
    out += key.t_dir > 0 ? "t+g" : "t-g";
    out += std::to_string(key.t_gen + 1);
    if (key.has_d) out += "*";
  }
  if (key.has_d) out += "D" + std::to_string(key.d_index + 1);
  return out;
}

inline GenKey parse_gen(const std::string& text) {
  auto fail = [&]() -> GenKey {
    throw std::invalid_argument("unrecognized generator name: " + text);
  };
  std::size_t pos = 0;
  auto read_index = [&]() -> std::size_t {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail();
    unsigned long value = std::stoul(text.substr(start, pos - start));
    if (value == 0) fail();
    return value - 1;
  };

  GenKey key;
  if (text.compare(0, 1, "t") == 0) {
    if (text.size() < 4 || (text[1] != '+' && text[1] != '-') || text[2] != 'g') fail();
    key.t_dir = text[1] == '+' ? 1 : -1;
    pos = 3;
    key.t_gen = read_index();
    if (pos == text.size()) return key;
    if (text[pos] != '*') fail();
    ++pos;
    if (pos >= text.size() || text[pos] != 'D') fail();
    ++pos;
    key.has_d = true;
    key.d_index = read_index();
  } else if (!text.empty() && text[0] == 'D') {
    pos = 1;
    key.has_d = true;
    key.d_index = read_index();
  } else {
    fail();
  }
  if (pos != text.size()) fail();
  return key;
}

inline std::vector<GenKey> generator_keys(const GroupContextPtr& ctx) {
  std::vector<GenKey> keys;
  std::size_t gens = ctx->generators().size();
  for (std::size_t k = 0; k < gens; ++k) {
    keys.push_back(GenKey::t(k, 1));
    keys.push_back(GenKey::t(k, -1));
  }
  for (std::size_t k = 0; k < gens; ++k)
    for (std::size_t i = 0; i < ctx->n(); ++i) {
      keys.push_back(GenKey::t_d(k, 1, i));
      keys.push_back(GenKey::t_d(k, -1, i));
    }
  for (std::size_t i = 0; i < ctx->n(); ++i) keys.push_back(GenKey::d(i));
  return keys;
}

inline GroupElement gen_degree(const GenKey& key, const GroupContextPtr& ctx) {
  if (key.t_dir == 0) return GroupElement::zero(ctx);
  GroupElement step = GroupElement::unchecked(ctx, ctx->generators().at(key.t_gen));
  return key.t_dir > 0 ? step : -step;
}

inline AlgebraElement gen_element(const GenKey& key, const GroupContextPtr& ctx) {
  GroupElement degree = gen_degree(key, ctx);
  if (!key.has_d) return AlgebraElement::t_power(degree);
  std::vector<unsigned long> mu(ctx->n(), 0);
  mu.at(key.d_index) = 1;
  return AlgebraElement::term(degree, mu);
}

/// A finite window of module data: per-grade dimensions plus the matrix of
/// every generator wherever both the source and the target grade lie inside
/// the window.
class ActionTable {
 public:
  ActionTable(GroupContextPtr ctx, std::set<GroupElement> window,
              const std::map<GroupElement, std::size_t>& dims)
      : ctx_(std::move(ctx)), window_(std::move(window)) {
    if (!ctx_) throw std::invalid_argument("ActionTable: null context");
    for (const auto& beta : window_) {
      auto it = dims.find(beta);
      dims_.emplace(beta, it == dims.end() ? 0 : it->second);
    }
  }

  const GroupContextPtr& context() const { return ctx_; }
  const std::set<GroupElement>& window() const { return window_; }
  const std::map<GroupElement, std::size_t>& dims() const { return dims_; }
  const std::map<GenKey, std::map<GroupElement, Matrix>>& entries() const { return entries_; }

  std::size_t dim(const GroupElement& beta) const {
    auto it = dims_.find(beta);
    return it == dims_.end() ? 0 : it->second;
  }

  void set_entry(const GenKey& key, const GroupElement& beta, Matrix m) {
    if (window_.find(beta) == window_.end())
      throw std::invalid_argument("ActionTable: source grade outside the window");
    GroupElement target = gen_degree(key, ctx_) + beta;
    if (window_.find(target) == window_.end())
      throw std::invalid_argument("ActionTable: target grade outside the window");
    if (m.rows() != dim(target) || m.cols() != dim(beta))
      throw std::invalid_argument("ActionTable: matrix shape disagrees with the grade dimensions");
    entries_[key].insert_or_assign(beta, std::move(m));
  }

  const Matrix* entry(const GenKey& key, const GroupElement& beta) const {
    auto row = entries_.find(key);
    if (row == entries_.end()) return nullptr;
    auto it = row->second.find(beta);
    return it == row->second.end() ? nullptr : &it->second;
  }

  friend bool operator==(const ActionTable& a, const ActionTable& b) {
    return *a.ctx_ == *b.ctx_ && a.window_ == b.window_ && a.dims_ == b.dims_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const ActionTable& a, const ActionTable& b) { return !(a == b); }

 private:
  GroupContextPtr ctx_;
  std::set<GroupElement> window_;
  std::map<GroupElement, std::size_t> dims_;
  std::map<GenKey, std::map<GroupElement, Matrix>> entries_;
};

/// All integer combinations of the group generators with coefficients in
/// [-radius, radius].  Radius 2 is the smallest window the recognizer can
/// normalize a basis in, so smaller radii are rejected outright.
inline std::set<GroupElement> make_box_window(const GroupContextPtr& ctx, long radius) {
  if (radius < 2) throw std::invalid_argument("make_box_window: radius must be at least 2");
  std::set<GroupElement> window;
  std::size_t gens = ctx->generators().size();
  std::vector<long> coeff(gens, -radius);
  while (true) {
    std::vector<Scalar> coords(ctx->n(), Scalar(0));
    for (std::size_t k = 0; k < gens; ++k)
      for (std::size_t i = 0; i < ctx->n(); ++i)
        coords[i] = coords[i] + Scalar(coeff[k]) * ctx->generators()[k][i];
    window.insert(GroupElement::unchecked(ctx, std::move(coords)));
    std::size_t k = 0;
    while (k < gens && coeff[k] == radius) coeff[k++] = -radius;
    if (k == gens) break;
    ++coeff[k];
  }
  return window;
}

namespace detail {

/// Matrix of x from grade beta into grade target, read off by acting on the
/// source basis vectors.
inline Matrix spec_matrix(const ModuleSpec& spec, const AlgebraElement& x,
                          const GroupElement& beta, const GroupElement& target) {
  std::size_t cols = spec.weight_space_dim(beta);
  std::size_t rows = spec.weight_space_dim(target);
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    ModuleVector out = act(spec, x, ModuleVector::basis(beta, j));
    for (const auto& [key, value] : out.entries()) m.at(key.second, j) = value;
  }
  return m;
}

}  // namespace detail

inline ActionTable table_from_spec(const ModuleSpec& spec, const std::set<GroupElement>& window) {
  const GroupContextPtr& ctx = spec.context();
  std::map<GroupElement, std::size_t> dims;
  for (const auto& beta : window) dims.emplace(beta, spec.weight_space_dim(beta));
  ActionTable table(ctx, window, dims);
  for (const GenKey& key : generator_keys(ctx)) {
    AlgebraElement x = gen_element(key, ctx);
    GroupElement degree = gen_degree(key, ctx);
    for (const auto& beta : window) {
      if (table.dim(beta) == 0) continue;
      GroupElement target = degree + beta;
      if (window.find(target) == window.end() || table.dim(target) == 0) continue;
      table.set_entry(key, beta, detail::spec_matrix(spec, x, beta, target));
    }
  }
  return table;
}

enum class RecognizedKind { trivial, plain, twisted, unknown };

struct RecognitionResult {
  RecognizedKind kind = RecognizedKind::unknown;
  std::optional<ModuleSpec> spec;
  std::map<GroupElement, Matrix> basis;
};

namespace detail {

struct TransportFailure {};

/// Basis-change matrices over the window: C at 0 is the identity and each
/// step along a stored t^{±γ_k} entry multiplies by sign·M.  Paths follow the
/// canonical generator coefficients of each grade, one generator at a time.
inline std::map<GroupElement, Matrix> transport_basis(const ActionTable& table,
                                                      const Scalar& sign, std::size_t p) {
  const GroupContextPtr& ctx = table.context();
  std::map<GroupElement, Matrix> basis;
  for (const auto& beta : table.window()) {
    auto coeffs = beta.lattice_coefficients();
    if (!coeffs) throw TransportFailure{};
    GroupElement cursor = GroupElement::zero(ctx);
    Matrix c = Matrix::identity(p);
    for (std::size_t k = 0; k < coeffs->size(); ++k) {
      long steps = (*coeffs)[k].get_si();
      int dir = steps >= 0 ? 1 : -1;
      GenKey key = GenKey::t(k, dir);
      GroupElement step = gen_degree(key, ctx);
      for (long taken = 0; taken < std::labs(steps); ++taken) {
        const Matrix* m = table.entry(key, cursor);
        if (m == nullptr || !m->inverse()) throw TransportFailure{};
        c = sign * (*m * c);
        cursor = cursor + step;
      }
    }
    basis.emplace(beta, std::move(c));
  }
  return basis;
}

inline bool verify_against(const ActionTable& table, const ModuleSpec& spec,
                           const std::map<GroupElement, Matrix>& basis) {
  const GroupContextPtr& ctx = table.context();
  for (const auto& [key, row] : table.entries()) {
    AlgebraElement x = gen_element(key, ctx);
    GroupElement degree = gen_degree(key, ctx);
    for (const auto& [beta, m] : row) {
      GroupElement target = degree + beta;
      Matrix f = spec_matrix(spec, x, beta, target);
      if (m * basis.at(beta) != basis.at(target) * f) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Decide whether the sampled data is the restriction of a trivial, plain, or
/// twisted module in some per-grade basis, and recover that basis.  Anything
/// inconsistent comes back as unknown.
inline RecognitionResult recognize(const ActionTable& table) {
  const GroupContextPtr& ctx = table.context();
  GroupElement zero = GroupElement::zero(ctx);
  if (table.window().find(zero) == table.window().end())
    throw std::invalid_argument("recognize: window must contain the zero grade");

  RecognitionResult unknown;

  bool all_t_zero = true;
  bool all_zero = true;
  for (const auto& [key, row] : table.entries())
    for (const auto& [beta, m] : row)
      if (!m.is_zero()) {
        all_zero = false;
        if (!key.has_d) all_t_zero = false;
      }
  if (all_t_zero) {
    if (!all_zero) return unknown;
    RecognitionResult result;
    result.kind = RecognizedKind::trivial;
    result.spec = ModuleSpec::trivial(ctx, table.dims());
    return result;
  }

  std::size_t p = table.dim(zero);
  if (p == 0) return unknown;
  for (const auto& [beta, d] : table.dims())
    if (d != p) return unknown;

  std::size_t direction = 0;
  for (std::size_t k = 0; k < ctx->generators().size(); ++k) {
    bool nondegenerate = true;
    for (const Scalar& coord : ctx->generators()[k])
      if (coord.is_zero()) nondegenerate = false;
    if (nondegenerate) {
      direction = k;
      break;
    }
  }
  GroupElement gamma = GroupElement::unchecked(ctx, ctx->generators()[direction]);

  const Matrix* up = table.entry(GenKey::t(direction, 1), -gamma);
  if (up == nullptr) return unknown;
  bool plain_ok = true, twisted_ok = true;
  std::vector<Matrix> g_mats;
  for (std::size_t i = 0; i < ctx->n(); ++i) {
    const Matrix* down_d = table.entry(GenKey::t_d(direction, -1, i), zero);
    const Matrix* d_at_zero = table.entry(GenKey::d(i), zero);
    if (down_d == nullptr || d_at_zero == nullptr) return unknown;
    Matrix probe = *up * *down_d;
    if (probe != *d_at_zero) plain_ok = false;
    if (probe + *d_at_zero != gamma[i] * Matrix::identity(p)) twisted_ok = false;
    g_mats.push_back(*d_at_zero);
  }

  for (std::size_t i = 0; i < g_mats.size(); ++i)
    for (std::size_t j = i + 1; j < g_mats.size(); ++j)
      if (!commute(g_mats[i], g_mats[j])) return unknown;

  std::vector<RecognizedKind> candidates;
  if (plain_ok) candidates.push_back(RecognizedKind::plain);
  if (twisted_ok) candidates.push_back(RecognizedKind::twisted);

  for (RecognizedKind kind : candidates) {
    MatrixTuple tuple(p, g_mats);
    ModuleSpec spec = kind == RecognizedKind::plain ? ModuleSpec::plain(ctx, tuple)
                                                    : ModuleSpec::twisted(ctx, tuple);
    Scalar sign = kind == RecognizedKind::plain ? Scalar(1) : Scalar(-1);
    std::map<GroupElement, Matrix> basis;
    try {
      basis = detail::transport_basis(table, sign, p);
    } catch (const detail::TransportFailure&) {
      continue;
    }
    if (!detail::verify_against(table, spec, basis)) continue;
    RecognitionResult result;
    result.kind = kind;
    result.spec = std::move(spec);
    result.basis = std::move(basis);
    return result;
  }
  return unknown;
}

/// Rebuild the table a recognition came from: the recovered spec's action,
/// conjugated back through the recovered per-grade basis.
inline ActionTable regenerate(const RecognitionResult& result,
                              const std::set<GroupElement>& window) {
  if (result.kind == RecognizedKind::unknown || !result.spec)
    throw std::domain_error("regenerate: nothing was recognized");
  const ModuleSpec& spec = *result.spec;
  if (result.kind == RecognizedKind::trivial) return table_from_spec(spec, window);

  std::map<GroupElement, Matrix> inverses;
  for (const auto& beta : window) {
    auto it = result.basis.find(beta);
    if (it == result.basis.end())
      throw std::invalid_argument("regenerate: window point outside the recognized basis");
    auto inv = it->second.inverse();
    if (!inv) throw std::invalid_argument("regenerate: recognized basis is singular");
    inverses.emplace(beta, *std::move(inv));
  }

  const GroupContextPtr& ctx = spec.context();
  std::map<GroupElement, std::size_t> dims;
  for (const auto& beta : window) dims.emplace(beta, spec.weight_space_dim(beta));
  ActionTable table(ctx, window, dims);
  for (const GenKey& key : generator_keys(ctx)) {
    AlgebraElement x = gen_element(key, ctx);
    GroupElement degree = gen_degree(key, ctx);
    for (const auto& beta : window) {
      GroupElement target = degree + beta;
      if (window.find(target) == window.end()) continue;
      Matrix f = detail::spec_matrix(spec, x, beta, target);
      table.set_entry(key, beta, result.basis.at(target) * f * inverses.at(beta));
    }
  }
  return table;
}

}  // namespace weyl
