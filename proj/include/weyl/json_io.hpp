#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "weyl/action_table.hpp"
#include "weyl/modules.hpp"
#include "weyl/solver.hpp"

namespace weyl {

inline nlohmann::json scalar_to_json(const Scalar& s) { return format_scalar(s); }

inline Scalar scalar_from_json(const nlohmann::json& j, const FieldContext& field) {
  return parse_scalar(j.get<std::string>(), field);
}

inline nlohmann::json point_to_json(const GroupElement& g) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < g.n(); ++i) out.push_back(format_scalar(g[i]));
  return out;
}

inline GroupElement point_from_json(const nlohmann::json& j, const GroupContextPtr& ctx) {
  std::vector<Scalar> coords;
  for (const auto& entry : j) coords.push_back(scalar_from_json(entry, ctx->field()));
  return GroupElement(ctx, std::move(coords));
}

/// Object-key rendering of a grade, comma-joined coordinates.
inline std::string point_key(const GroupElement& g) {
  std::string out;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (i > 0) out += ",";
    out += format_scalar(g[i]);
  }
  return out;
}

inline GroupElement point_from_key(const std::string& key, const GroupContextPtr& ctx) {
  std::vector<Scalar> coords;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    std::string piece =
        comma == std::string::npos ? key.substr(start) : key.substr(start, comma - start);
    coords.push_back(parse_scalar(piece, ctx->field()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return GroupElement(ctx, std::move(coords));
}

inline nlohmann::json context_to_json(const GroupContextPtr& ctx) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : ctx->generators()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : g) row.push_back(format_scalar(c));
    gens.push_back(std::move(row));
  }
  return {{"n", ctx->n()}, {"d", ctx->field().d()}, {"generators", std::move(gens)}};
}

inline GroupContextPtr context_from_json(const nlohmann::json& j) {
  auto n = j.at("n").get<std::size_t>();
  FieldContext field(j.at("d").get<unsigned long>());
  std::vector<std::vector<Scalar>> gens;
  for (const auto& row : j.at("generators")) {
    std::vector<Scalar> g;
    for (const auto& c : row) g.push_back(scalar_from_json(c, field));
    gens.push_back(std::move(g));
  }
  return std::make_shared<GroupContext>(n, field, std::move(gens));
}

inline nlohmann::json element_to_json(const AlgebraElement& x, const std::string& ctx_ref) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coeff] : x.terms()) {
    nlohmann::json mu = nlohmann::json::array();
    for (unsigned long m : mono.mu) mu.push_back(m);
    terms.push_back({{"alpha", point_to_json(mono.alpha)},
                     {"mu", std::move(mu)},
                     {"coeff", format_scalar(coeff)}});
  }
  return {{"ctx_ref", ctx_ref}, {"terms", std::move(terms)}};
}

inline AlgebraElement element_from_json(const nlohmann::json& j, const GroupContextPtr& ctx) {
  AlgebraElement out = AlgebraElement::zero(ctx);
  for (const auto& term : j.at("terms")) {
    GroupElement alpha = point_from_json(term.at("alpha"), ctx);
    std::vector<unsigned long> mu = term.at("mu").get<std::vector<unsigned long>>();
    if (mu.size() != ctx->n())
      throw std::invalid_argument("element: exponent arity disagrees with the context");
    Scalar coeff = scalar_from_json(term.at("coeff"), ctx->field());
    out = out + AlgebraElement::term(std::move(alpha), std::move(mu), coeff);
  }
  return out;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) out.push_back(format_scalar(m.at(i, k)));
  return out;
}

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                               const FieldContext& field) {
  if (j.size() != rows * cols)
    throw std::invalid_argument("matrix: expected " + std::to_string(rows * cols) +
                                " entries, got " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m.at(i, k) = scalar_from_json(j.at(i * cols + k), field);
  return m;
}

inline std::string module_kind_name(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::trivial: return "trivial";
    case ModuleKind::plain: return "plain";
    case ModuleKind::twisted: return "twisted";
    case ModuleKind::direct_sum: return "direct_sum";
  }
  throw std::logic_error("module_kind_name: unhandled kind");
}

inline nlohmann::json spec_to_json(const ModuleSpec& spec, const std::string& ctx_ref) {
  nlohmann::json out{{"kind", module_kind_name(spec.kind())}, {"ctx_ref", ctx_ref}};
  switch (spec.kind()) {
    case ModuleKind::trivial: {
      nlohmann::json dims = nlohmann::json::object();
      for (const auto& [beta, dim] : spec.trivial_dims()) dims[point_key(beta)] = dim;
      out["dims"] = std::move(dims);
      break;
    }
    case ModuleKind::plain:
    case ModuleKind::twisted: {
      out["p"] = spec.p();
      nlohmann::json mats = nlohmann::json::array();
      for (const auto& m : spec.tuple().matrices()) mats.push_back(matrix_to_json(m));
      out["G"] = std::move(mats);
      break;
    }
    case ModuleKind::direct_sum: {
      nlohmann::json parts = nlohmann::json::array();
      for (const auto& part : spec.summands()) parts.push_back(spec_to_json(part, ctx_ref));
      out["summands"] = std::move(parts);
      break;
    }
  }
  return out;
}

inline ModuleSpec spec_from_json(const nlohmann::json& j, const GroupContextPtr& ctx) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") {
    std::map<GroupElement, std::size_t> dims;
    for (const auto& [key, dim] : j.at("dims").items())
      dims.emplace(point_from_key(key, ctx), dim.get<std::size_t>());
    return ModuleSpec::trivial(ctx, std::move(dims));
  }
  if (kind == "plain" || kind == "twisted") {
    auto p = j.at("p").get<std::size_t>();
    std::vector<Matrix> mats;
    for (const auto& m : j.at("G")) mats.push_back(matrix_from_json(m, p, p, ctx->field()));
    if (mats.size() != ctx->n())
      throw std::invalid_argument("module spec: expected one matrix per coordinate");
    MatrixTuple tuple(p, std::move(mats));
    return kind == "plain" ? ModuleSpec::plain(ctx, std::move(tuple))
                           : ModuleSpec::twisted(ctx, std::move(tuple));
  }
  if (kind == "direct_sum") {
    std::vector<ModuleSpec> parts;
    for (const auto& part : j.at("summands")) parts.push_back(spec_from_json(part, ctx));
    return ModuleSpec::direct_sum(std::move(parts));
  }
  throw std::invalid_argument("module spec: unknown kind '" + kind + "'");
}

inline nlohmann::json vector_to_json(const ModuleVector& v, const std::string& ctx_ref) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, value] : v.entries())
    entries.push_back({{"beta", point_to_json(key.first)},
                       {"component", key.second + 1},
                       {"value", format_scalar(value)}});
  return {{"ctx_ref", ctx_ref}, {"entries", std::move(entries)}};
}

inline ModuleVector vector_from_json(const nlohmann::json& j, const GroupContextPtr& ctx) {
  ModuleVector out(ctx);
  for (const auto& entry : j.at("entries")) {
    auto component = entry.at("component").get<std::size_t>();
    if (component == 0)
      throw std::invalid_argument("module vector: component indices start at 1");
    out.add(point_from_json(entry.at("beta"), ctx), component - 1,
            scalar_from_json(entry.at("value"), ctx->field()));
  }
  return out;
}

inline nlohmann::json table_to_json(const ActionTable& table, const std::string& ctx_ref) {
  nlohmann::json window = nlohmann::json::array();
  for (const auto& beta : table.window()) window.push_back(point_to_json(beta));
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [beta, dim] : table.dims()) dims[point_key(beta)] = dim;
  nlohmann::json action = nlohmann::json::array();
  for (const auto& [key, row] : table.entries())
    for (const auto& [beta, m] : row)
      action.push_back(
          {{"gen", format_gen(key)}, {"beta", point_to_json(beta)}, {"matrix", matrix_to_json(m)}});
  return {{"ctx_ref", ctx_ref},
          {"window", std::move(window)},
          {"dims", std::move(dims)},
          {"action", std::move(action)}};
}

inline ActionTable table_from_json(const nlohmann::json& j, const GroupContextPtr& ctx) {
  std::set<GroupElement> window;
  for (const auto& beta : j.at("window")) window.insert(point_from_json(beta, ctx));
  std::map<GroupElement, std::size_t> dims;
  for (const auto& [key, dim] : j.at("dims").items())
    dims.emplace(point_from_key(key, ctx), dim.get<std::size_t>());
  ActionTable table(ctx, std::move(window), dims);
  for (const auto& entry : j.at("action")) {
    GenKey key = parse_gen(entry.at("gen").get<std::string>());
    GroupElement beta = point_from_json(entry.at("beta"), ctx);
    GroupElement target = gen_degree(key, ctx) + beta;
    auto source_it = table.dims().find(beta);
    auto target_it = table.dims().find(target);
    if (source_it == table.dims().end() || target_it == table.dims().end())
      throw std::invalid_argument("action table: entry grade outside the window");
    table.set_entry(key, beta,
                    matrix_from_json(entry.at("matrix"), target_it->second, source_it->second,
                                     ctx->field()));
  }
  return table;
}

inline std::string unknown_family_name(int family) {
  static const char* const names[] = {"P", "Q", "R", "S"};
  if (family < 0 || family > 3) throw std::invalid_argument("unknown_family_name: bad family");
  return names[family];
}

inline nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json families = nlohmann::json::array();
  for (const auto& fam : report.families) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [u, v] : fam.values)
      values.push_back({{"family", unknown_family_name(u.family)},
                        {"index", u.index},
                        {"value", v.get_str()}});
    families.push_back(
        {{"c", fam.c.get_str()}, {"range", fam.range}, {"values", std::move(values)}});
  }
  return {{"families", std::move(families)},
          {"residual_gcd", format_poly(report.residual_gcd, "c")},
          {"log", report.log}};
}

}  // namespace weyl
