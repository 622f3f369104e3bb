#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/algebra.hpp"
#include "weyl/extension.hpp"

namespace weyl {

/// Error with a character offset into the source text.
class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class ExprKind {
  number,
  root,
  t_power,
  derivation,
  central,
  negate,
  add,
  subtract,
  multiply,
  power,
  lie,
  sigma_twist,
};

struct Expression {
  ExprKind kind;
  std::size_t pos = 0;
  Rational number;
  unsigned long radicand = 0;
  std::size_t index = 0;
  bool indexed = false;
  unsigned long exponent = 0;
  std::vector<Expression> children;
};

namespace detail {

enum class TokenKind { number, name, symbol, end };

struct Token {
  TokenKind kind;
  std::size_t pos;
  Rational value;
  std::string text;
  char symbol = 0;
};

inline std::vector<Token> lex_expression(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      Integer num(text.substr(start, i - start));
      Integer den = 1;
      if (i < text.size() && text[i] == '/') {
        ++i;
        std::size_t dstart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == dstart) throw ExprError("expected a denominator after '/'", i);
        den = Integer(text.substr(dstart, i - dstart));
        if (den == 0) throw ExprError("zero denominator", dstart);
      }
      Rational value(num, den);
      value.canonicalize();
      out.push_back({TokenKind::number, start, value, "", 0});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({TokenKind::name, start, Rational(0), text.substr(start, i - start), 0});
      continue;
    }
    if (std::string("+-*^()[],").find(c) != std::string::npos) {
      out.push_back({TokenKind::symbol, i, Rational(0), "", c});
      ++i;
      continue;
    }
    throw ExprError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({TokenKind::end, text.size(), Rational(0), "", 0});
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expression run() {
    Expression e = parse_sum();
    if (cur().kind != TokenKind::end) throw ExprError("unexpected trailing input", cur().pos);
    return e;
  }

 private:
  const Token& cur() const { return tokens_[at_]; }

  bool at_symbol(char c) const {
    return cur().kind == TokenKind::symbol && cur().symbol == c;
  }

  std::size_t take_symbol(char c, const std::string& what) {
    if (!at_symbol(c)) throw ExprError(what, cur().pos);
    return tokens_[at_++].pos;
  }

  Expression parse_sum() {
    Expression left = parse_product();
    while (at_symbol('+') || at_symbol('-')) {
      bool plus = cur().symbol == '+';
      std::size_t pos = tokens_[at_++].pos;
      Expression right = parse_product();
      Expression node{plus ? ExprKind::add : ExprKind::subtract, pos};
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Expression parse_product() {
    Expression left = parse_unary();
    while (at_symbol('*')) {
      std::size_t pos = tokens_[at_++].pos;
      Expression right = parse_unary();
      Expression node{ExprKind::multiply, pos};
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Expression parse_unary() {
    if (at_symbol('-')) {
      std::size_t pos = tokens_[at_++].pos;
      Expression node{ExprKind::negate, pos};
      node.children.push_back(parse_unary());
      return node;
    }
    if (at_symbol('+')) {
      ++at_;
      return parse_unary();
    }
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    while (at_symbol('^')) {
      std::size_t pos = tokens_[at_++].pos;
      if (at_symbol('-')) throw ExprError("power must be a nonnegative integer", cur().pos);
      if (cur().kind != TokenKind::number || cur().value.get_den() != 1)
        throw ExprError("expected an integer power", cur().pos);
      Expression node{ExprKind::power, pos};
      node.exponent = cur().value.get_num().get_ui();
      ++at_;
      node.children.push_back(std::move(base));
      base = std::move(node);
    }
    return base;
  }

  Expression parse_primary() {
    const Token& t = cur();
    if (t.kind == TokenKind::number) {
      Expression node{ExprKind::number, t.pos};
      node.number = t.value;
      ++at_;
      return node;
    }
    if (t.kind == TokenKind::name) return parse_name();
    if (at_symbol('(')) {
      ++at_;
      Expression inner = parse_sum();
      take_symbol(')', "expected ')'");
      return inner;
    }
    if (at_symbol('[')) {
      std::size_t pos = tokens_[at_++].pos;
      Expression node{ExprKind::lie, pos};
      node.children.push_back(parse_sum());
      take_symbol(',', "expected ',' in bracket");
      node.children.push_back(parse_sum());
      take_symbol(']', "expected ']'");
      return node;
    }
    throw ExprError("expected an expression", t.pos);
  }

  Expression parse_name() {
    Token t = tokens_[at_++];
    if (t.text == "t") {
      Expression node{ExprKind::t_power, t.pos};
      take_symbol('^', "expected '^' after t");
      take_symbol('(', "expected '(' after t^");
      node.children.push_back(parse_sum());
      while (at_symbol(',')) {
        ++at_;
        node.children.push_back(parse_sum());
      }
      take_symbol(')', "expected ')' after group exponent");
      return node;
    }
    if (t.text == "C") {
      return Expression{ExprKind::central, t.pos};
    }
    if (t.text == "sigma") {
      Expression node{ExprKind::sigma_twist, t.pos};
      take_symbol('(', "expected '(' after sigma");
      node.children.push_back(parse_sum());
      take_symbol(')', "expected ')' after sigma argument");
      return node;
    }
    if (t.text == "sqrt") {
      Expression node{ExprKind::root, t.pos};
      take_symbol('(', "expected '(' after sqrt");
      if (cur().kind != TokenKind::number || cur().value.get_den() != 1)
        throw ExprError("expected an integer radicand", cur().pos);
      node.radicand = cur().value.get_num().get_ui();
      ++at_;
      take_symbol(')', "expected ')' after sqrt argument");
      return node;
    }
    if (!t.text.empty() && t.text[0] == 'D') {
      Expression node{ExprKind::derivation, t.pos};
      if (t.text.size() == 1) {
        node.indexed = false;
      } else {
        for (std::size_t k = 1; k < t.text.size(); ++k)
          if (!std::isdigit(static_cast<unsigned char>(t.text[k])))
            throw ExprError("unknown name '" + t.text + "'", t.pos);
        unsigned long index = 0;
        try {
          index = std::stoul(t.text.substr(1));
        } catch (const std::out_of_range&) {
          throw ExprError("derivation index out of range", t.pos);
        }
        if (index == 0) throw ExprError("derivation indices start at 1", t.pos);
        node.index = index - 1;
        node.indexed = true;
      }
      return node;
    }
    throw ExprError("unknown name '" + t.text + "'", t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

}  // namespace detail

inline Expression parse_expression(const std::string& text) {
  return detail::ExprParser(detail::lex_expression(text)).run();
}

/// Evaluated expression: an algebra element plus a central coordinate, which
/// stays zero except in rank one.
struct EvalValue {
  AlgebraElement body;
  Scalar central;

  ExtendedElement as_extended() const { return ExtendedElement(body, central); }
};

namespace detail {

inline bool pure_scalar(const EvalValue& v, Scalar& out) {
  if (!v.central.is_zero()) return false;
  if (v.body.is_zero()) {
    out = Scalar(0);
    return true;
  }
  const auto& terms = v.body.terms();
  if (terms.size() != 1) return false;
  const auto& [mono, coeff] = *terms.begin();
  if (!mono.alpha.is_zero() || mono.level() != 0) return false;
  out = coeff;
  return true;
}

}  // namespace detail

inline EvalValue eval(const Expression& e, const GroupContextPtr& ctx) {
  switch (e.kind) {
    case ExprKind::number:
      return {Scalar(e.number) * AlgebraElement::one(ctx), Scalar(0)};
    case ExprKind::root: {
      const FieldContext& field = ctx->field();
      if (field.rational_only() || field.d() != e.radicand)
        throw ExprError(
            "sqrt(" + std::to_string(e.radicand) + ") does not belong to the session field",
            e.pos);
      return {Scalar::sqrt_of(field) * AlgebraElement::one(ctx), Scalar(0)};
    }
    case ExprKind::t_power: {
      if (e.children.size() != ctx->n())
        throw ExprError("expected " + std::to_string(ctx->n()) + " exponent coordinates, got " +
                            std::to_string(e.children.size()),
                        e.pos);
      std::vector<Scalar> coords;
      for (const Expression& child : e.children) {
        EvalValue v = eval(child, ctx);
        Scalar s;
        if (!detail::pure_scalar(v, s))
          throw ExprError("group exponent coordinate must be a scalar", child.pos);
        coords.push_back(s);
      }
      try {
        return {AlgebraElement::t_power(GroupElement(ctx, std::move(coords))), Scalar(0)};
      } catch (const std::domain_error&) {
        throw ExprError("exponent outside the group lattice", e.pos);
      }
    }
    case ExprKind::derivation: {
      if (!e.indexed && ctx->n() != 1)
        throw ExprError("bare D is ambiguous here; use D1..D" + std::to_string(ctx->n()), e.pos);
      if (e.index >= ctx->n())
        throw ExprError("derivation index out of range (n = " + std::to_string(ctx->n()) + ")",
                        e.pos);
      return {AlgebraElement::derivation(ctx, e.index), Scalar(0)};
    }
    case ExprKind::central:
      if (ctx->n() != 1) throw ExprError("C exists only in rank one", e.pos);
      return {AlgebraElement::zero(ctx), Scalar(1)};
    case ExprKind::negate: {
      EvalValue v = eval(e.children[0], ctx);
      return {Scalar(-1) * v.body, Scalar(-1) * v.central};
    }
    case ExprKind::add: {
      EvalValue x = eval(e.children[0], ctx);
      EvalValue y = eval(e.children[1], ctx);
      return {x.body + y.body, x.central + y.central};
    }
    case ExprKind::subtract: {
      EvalValue x = eval(e.children[0], ctx);
      EvalValue y = eval(e.children[1], ctx);
      return {x.body - y.body, x.central - y.central};
    }
    case ExprKind::multiply: {
      EvalValue x = eval(e.children[0], ctx);
      EvalValue y = eval(e.children[1], ctx);
      if (x.central.is_zero() && y.central.is_zero())
        return {x.body * y.body, Scalar(0)};
      Scalar s;
      if (detail::pure_scalar(x, s)) return {s * y.body, s * y.central};
      if (detail::pure_scalar(y, s)) return {s * x.body, s * x.central};
      throw ExprError("central terms admit no product", e.pos);
    }
    case ExprKind::power: {
      EvalValue v = eval(e.children[0], ctx);
      if (!v.central.is_zero()) throw ExprError("central terms admit no product", e.pos);
      AlgebraElement out = AlgebraElement::one(ctx);
      for (unsigned long k = 0; k < e.exponent; ++k) out = out * v.body;
      return {std::move(out), Scalar(0)};
    }
    case ExprKind::lie: {
      EvalValue x = eval(e.children[0], ctx);
      EvalValue y = eval(e.children[1], ctx);
      if (ctx->n() == 1) {
        ExtendedElement r = extended_bracket(x.as_extended(), y.as_extended());
        return {r.body(), r.central()};
      }
      return {bracket(x.body, y.body), Scalar(0)};
    }
    case ExprKind::sigma_twist: {
      EvalValue v = eval(e.children[0], ctx);
      if (!v.central.is_zero())
        throw ExprError("sigma is undefined on central terms", e.pos);
      return {sigma(v.body), Scalar(0)};
    }
  }
  throw std::logic_error("eval: unhandled expression node");
}

inline EvalValue eval_text(const std::string& text, const GroupContextPtr& ctx) {
  return eval(parse_expression(text), ctx);
}

namespace detail {

/// Render a coefficient for placement before "*monomial".  Sets `negative`
/// and returns the unsigned part, empty when the magnitude is one.
inline std::string format_coefficient(const Scalar& c, bool& negative) {
  negative = false;
  if (c.is_rational()) {
    Rational r = c.rational_part();
    if (r < 0) {
      negative = true;
      r = -r;
    }
    return r == 1 ? "" : format_rational(r);
  }
  if (c.rational_part() == 0) {
    Rational b = c.sqrt_part();
    if (b < 0) {
      negative = true;
      b = -b;
    }
    std::string root = "sqrt(" + std::to_string(c.d()) + ")";
    return b == 1 ? root : format_rational(b) + "*" + root;
  }
  return "(" + format_scalar(c) + ")";
}

inline std::string format_monomial(const Monomial& m, std::size_t n) {
  std::string out;
  if (!m.alpha.is_zero()) {
    out = "t^(";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out += ",";
      out += format_scalar(m.alpha[i]);
    }
    out += ")";
  }
  for (std::size_t i = 0; i < m.mu.size(); ++i) {
    if (m.mu[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += n == 1 ? "D" : "D" + std::to_string(i + 1);
    if (m.mu[i] > 1) out += "^" + std::to_string(m.mu[i]);
  }
  return out;
}

inline void append_term(std::string& out, bool negative, const std::string& piece) {
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  out += piece;
}

}  // namespace detail

inline std::string format_element(const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::size_t n = x.context()->n();
  std::string out;
  for (const auto& [mono, coeff] : x.terms()) {
    std::string body = detail::format_monomial(mono, n);
    bool negative = false;
    std::string piece;
    if (body.empty()) {
      if (coeff.is_rational()) {
        Rational r = coeff.rational_part();
        negative = r < 0;
        piece = format_rational(negative ? -r : r);
      } else {
        piece = format_scalar(coeff);
      }
    } else {
      std::string head = detail::format_coefficient(coeff, negative);
      piece = head.empty() ? body : head + "*" + body;
    }
    detail::append_term(out, negative, piece);
  }
  return out;
}

inline std::string format_extended(const ExtendedElement& x) {
  if (x.is_zero()) return "0";
  std::string out = x.body().is_zero() ? "" : format_element(x.body());
  if (!x.central().is_zero()) {
    bool negative = false;
    std::string head = detail::format_coefficient(x.central(), negative);
    detail::append_term(out, negative, head.empty() ? "C" : head + "*C");
  }
  return out;
}

inline std::string format_value(const EvalValue& v) {
  if (v.central.is_zero()) return format_element(v.body);
  return format_extended(v.as_extended());
}

}  // namespace weyl
