#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "weyl/expr.hpp"
#include "weyl/json_io.hpp"
#include "weyl/solver.hpp"
#include "weyl/verify.hpp"

namespace {

using namespace weyl;

struct SessionConfig {
  std::string context_path;
  unsigned long seed = 0;
  std::string format = "text";
  GroupContextPtr ctx;

  bool json() const { return format == "json"; }
  std::string ctx_ref() const { return context_path.empty() ? "default" : context_path; }
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

std::string recognized_kind_name(RecognizedKind kind) {
  switch (kind) {
    case RecognizedKind::trivial:
      return "trivial";
    case RecognizedKind::plain:
      return "plain";
    case RecognizedKind::twisted:
      return "twisted";
    default:
      return "unknown";
  }
}

std::string format_matrix_line(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_scalar(m.at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::string format_vector_text(const ModuleVector& v) {
  if (v.is_zero()) return "0\n";
  std::string out;
  for (const auto& [key, value] : v.entries())
    out += "grade (" + point_key(key.first) + ") component " + std::to_string(key.second + 1) +
           ": " + format_scalar(value) + "\n";
  return out;
}

nlohmann::json value_to_json(const EvalValue& v, const SessionConfig& session) {
  return {{"body", element_to_json(v.body, session.ctx_ref())},
          {"central", format_scalar(v.central)}};
}

void emit_value(const SessionConfig& session, const EvalValue& value) {
  if (session.json())
    std::cout << value_to_json(value, session).dump(2) << "\n";
  else
    std::cout << format_value(value) << "\n";
}

std::string describe_error(const std::exception& e) { return e.what(); }

int cmd_eval(const SessionConfig& session, const std::string& text) {
  if (!text.empty()) {
    emit_value(session, eval_text(text, session.ctx));
    return 0;
  }
  int status = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    try {
      emit_value(session, eval_text(line, session.ctx));
    } catch (const std::exception& e) {
      std::cerr << "error: " << describe_error(e) << "\n";
      status = 2;
    }
  }
  return status;
}

int cmd_bracket(const SessionConfig& session, const std::string& xt, const std::string& yt) {
  EvalValue x = eval_text(xt, session.ctx);
  EvalValue y = eval_text(yt, session.ctx);
  if (session.ctx->n() == 1) {
    ExtendedElement r = extended_bracket(x.as_extended(), y.as_extended());
    emit_value(session, EvalValue{r.body(), r.central()});
  } else {
    emit_value(session, EvalValue{bracket(x.body, y.body), Scalar(0)});
  }
  return 0;
}

int cmd_act(const SessionConfig& session, const std::string& module_path,
            const std::string& vector_path, const std::string& text) {
  ModuleSpec spec = spec_from_json(load_json(module_path), session.ctx);
  ModuleVector v = vector_from_json(load_json(vector_path), session.ctx);
  EvalValue x = eval_text(text, session.ctx);
  ModuleVector out = session.ctx->n() == 1 ? act_extended(spec, x.as_extended(), v)
                                           : act(spec, x.body, v);
  if (session.json())
    std::cout << vector_to_json(out, session.ctx_ref()).dump(2) << "\n";
  else
    std::cout << format_vector_text(out);
  return 0;
}

int cmd_verify(const SessionConfig& session, const std::string& suite, unsigned long trials) {
  std::vector<SuiteResult> results = run_suites(suite, trials, session.seed);
  bool all_ok = true;
  for (const auto& r : results) all_ok = all_ok && r.ok();
  if (session.json()) {
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& r : results)
      suites.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"failed", r.failed},
                        {"failures", r.failures}});
    std::cout << nlohmann::json{{"suites", std::move(suites)}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::string line = (r.ok() ? "PASS " : "FAIL ") + std::to_string(r.passed) + "/" +
                         std::to_string(r.total());
      if (results.size() > 1)
        std::cout << r.name << ": " << line << "\n";
      else
        std::cout << line << "\n";
    }
  }
  for (const auto& r : results)
    for (const auto& f : r.failures) std::cerr << r.name << " failure: " << f << "\n";
  return all_ok ? 0 : 1;
}

int cmd_classify(const SessionConfig& session, const std::string& table_path) {
  ActionTable table = table_from_json(load_json(table_path), session.ctx);
  RecognitionResult rec = recognize(table);
  if (session.json()) {
    nlohmann::json j = {{"kind", recognized_kind_name(rec.kind)}, {"spec", nullptr}};
    if (rec.spec) j["spec"] = spec_to_json(*rec.spec, session.ctx_ref());
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << recognized_kind_name(rec.kind) << "\n";
  if (rec.spec && (rec.kind == RecognizedKind::plain || rec.kind == RecognizedKind::twisted)) {
    std::cout << "p = " << rec.spec->p() << "\n";
    const MatrixTuple& tuple = rec.spec->tuple();
    for (std::size_t i = 0; i < tuple.n(); ++i)
      std::cout << "G[" << (i + 1) << "] = " << format_matrix_line(tuple[i]) << "\n";
  }
  if (rec.spec && rec.kind == RecognizedKind::trivial)
    for (const auto& [beta, dim] : rec.spec->trivial_dims())
      if (dim > 0) std::cout << "dim at (" << point_key(beta) << ") = " << dim << "\n";
  return 0;
}

int cmd_solve(const SessionConfig& session, long range) {
  SolveReport report = solve_p1(range);
  if (session.json()) {
    std::cout << report_to_json(report).dump(2) << "\n";
    return 0;
  }
  std::cout << "families: " << report.families.size() << "\n";
  for (const auto& family : report.families)
    std::cout << "c = " << format_rational(family.c) << "\n";
  std::cout << "residual gcd: " << format_poly(report.residual_gcd, "c") << "\n";
  return 0;
}

int cmd_table(const SessionConfig& session, const std::string& module_path, long radius) {
  ModuleSpec spec = spec_from_json(load_json(module_path), session.ctx);
  ActionTable table = table_from_spec(spec, make_box_window(session.ctx, radius));
  std::cout << table_to_json(table, session.ctx_ref()).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for generalized Weyl algebras and their weight modules"};
  app.require_subcommand(1);

  SessionConfig session;
  app.add_option("--context", session.context_path, "JSON file describing the group context")
      ->envname("WEYL_CONTEXT");
  app.add_option("--seed", session.seed, "seed for randomized checks");
  app.add_option("--format", session.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string eval_text_arg;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression (or stdin lines)");
  eval_cmd->add_option("expression", eval_text_arg, "expression to evaluate");
  eval_cmd->fallthrough();

  std::string bracket_x, bracket_y;
  auto* bracket_cmd = app.add_subcommand("bracket", "Lie bracket of two expressions");
  bracket_cmd->add_option("x", bracket_x, "left operand")->required();
  bracket_cmd->add_option("y", bracket_y, "right operand")->required();
  bracket_cmd->fallthrough();

  std::string act_module, act_vector, act_expr;
  auto* act_cmd = app.add_subcommand("act", "apply an operator to a module vector");
  act_cmd->add_option("--module", act_module, "module description file")->required();
  act_cmd->add_option("--vector", act_vector, "vector description file")->required();
  act_cmd->add_option("expression", act_expr, "operator to apply")->required();
  act_cmd->fallthrough();

  std::string verify_suite;
  unsigned long verify_trials = 100;
  auto* verify_cmd = app.add_subcommand("verify", "run a randomized verification suite");
  verify_cmd->add_option("suite", verify_suite, "suite name, or 'all'")->required();
  verify_cmd->add_option("--trials", verify_trials, "number of random trials");
  verify_cmd->fallthrough();

  std::string classify_table;
  auto* classify_cmd = app.add_subcommand("classify", "recognize a module from its action table");
  classify_cmd->add_option("--table", classify_table, "action table file")->required();
  classify_cmd->fallthrough();

  long solve_range = 6;
  auto* solve_cmd = app.add_subcommand("solve-p1", "solve the rank-one coefficient constraints");
  solve_cmd->add_option("--range", solve_range, "largest t-degree kept in the constraints");
  solve_cmd->fallthrough();

  std::string table_module;
  long table_radius = 4;
  auto* table_cmd = app.add_subcommand("table", "emit the action table of a module");
  table_cmd->add_option("--module", table_module, "module description file")->required();
  table_cmd->add_option("--window", table_radius, "box window radius");
  table_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    session.ctx = session.context_path.empty() ? integer_lattice(1)
                                               : context_from_json(load_json(session.context_path));
    if (app.got_subcommand(eval_cmd)) return cmd_eval(session, eval_text_arg);
    if (app.got_subcommand(bracket_cmd)) return cmd_bracket(session, bracket_x, bracket_y);
    if (app.got_subcommand(act_cmd)) return cmd_act(session, act_module, act_vector, act_expr);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(session, verify_suite, verify_trials);
    if (app.got_subcommand(classify_cmd)) return cmd_classify(session, classify_table);
    if (app.got_subcommand(solve_cmd)) return cmd_solve(session, solve_range);
    if (app.got_subcommand(table_cmd)) return cmd_table(session, table_module, table_radius);
  } catch (const std::exception& e) {
    std::cerr << "error: " << describe_error(e) << "\n";
    return 2;
  }
  return 2;
}
