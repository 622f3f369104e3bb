#include <catch2/catch_amalgamated.hpp>

#include "weyl/action_table.hpp"
#include "weyl/random.hpp"

using namespace weyl;

namespace {

Matrix rand_invertible(Sampler& s, const FieldContext& field, std::size_t p, long bound) {
  while (true) {
    Matrix m = s.matrix(field, p, bound);
    if (m.inverse()) return m;
  }
}

bool rcf_match(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.n() != b.n() || a.p() != b.p()) return false;
  for (std::size_t i = 0; i < a.n(); ++i)
    if (rational_canonical_form(a[i]) != rational_canonical_form(b[i])) return false;
  return true;
}

ActionTable gauge(const ActionTable& table, Sampler& s, const FieldContext& field, long bound) {
  std::map<GroupElement, Matrix> change;
  for (const auto& [beta, d] : table.dims())
    change.emplace(beta, rand_invertible(s, field, d, bound));
  ActionTable out(table.context(), table.window(), table.dims());
  for (const auto& [key, row] : table.entries()) {
    GroupElement degree = gen_degree(key, table.context());
    for (const auto& [beta, m] : row)
      out.set_entry(key, beta, change.at(degree + beta) * m * *change.at(beta).inverse());
  }
  return out;
}

}  // namespace

TEST_CASE("generator names round-trip through the codec") {
  auto ctx2 = integer_lattice(2);
  for (const GenKey& key : generator_keys(ctx2)) CHECK(parse_gen(format_gen(key)) == key);

  CHECK(format_gen(GenKey::t(0, 1)) == "t+g1");
  CHECK(format_gen(GenKey::t(1, -1)) == "t-g2");
  CHECK(format_gen(GenKey::t_d(1, -1, 0)) == "t-g2*D1");
  CHECK(format_gen(GenKey::d(1)) == "D2");

  CHECK_THROWS_AS(parse_gen(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen("t+g0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen("tg1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen("t+g1*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen("D"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen("t+g1*D2x"), std::invalid_argument);
  CHECK_THROWS_AS(GenKey::t(0, 2), std::invalid_argument);
}

TEST_CASE("box windows enumerate small generator combinations") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  CHECK(window.size() == 5);
  for (long b = -2; b <= 2; ++b) CHECK(window.count(group_point(ctx, {b})) == 1);

  auto ctx2 = integer_lattice(2);
  CHECK(make_box_window(ctx2, 2).size() == 25);

  auto qctx = quadratic_lattice(2);
  auto qwindow = make_box_window(qctx, 2);
  CHECK(qwindow.size() == 25);
  CHECK(qwindow.count(GroupElement(qctx, std::vector<Scalar>{Scalar(2) - Scalar::sqrt_of(FieldContext(2))})) == 1);

  CHECK_THROWS_AS(make_box_window(ctx, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_box_window(ctx, 0), std::invalid_argument);
}

TEST_CASE("tables read off the module action") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  ModuleSpec plain = ModuleSpec::plain(ctx, MatrixTuple(1, {Matrix{{Scalar(0)}}}));
  ModuleSpec twisted = ModuleSpec::twisted(ctx, MatrixTuple(1, {Matrix{{Scalar(0)}}}));

  ActionTable tp = table_from_spec(plain, window);
  ActionTable tt = table_from_spec(twisted, window);
  for (long b = -2; b <= 1; ++b) {
    const Matrix* mp = tp.entry(GenKey::t(0, 1), group_point(ctx, {b}));
    REQUIRE(mp != nullptr);
    CHECK(*mp == Matrix{{Scalar(1)}});
    const Matrix* mt = tt.entry(GenKey::t(0, 1), group_point(ctx, {b}));
    REQUIRE(mt != nullptr);
    CHECK(*mt == Matrix{{Scalar(-1)}});
  }
  CHECK(tp.entry(GenKey::t(0, 1), group_point(ctx, {2})) == nullptr);
  CHECK(*tp.entry(GenKey::d(0), group_point(ctx, {2})) == Matrix{{Scalar(2)}});
  CHECK(*tt.entry(GenKey::d(0), group_point(ctx, {2})) == Matrix{{Scalar(2)}});
  CHECK(*tt.entry(GenKey::t_d(0, 1, 0), group_point(ctx, {0})) == Matrix{{Scalar(1)}});
  CHECK(*tp.entry(GenKey::t_d(0, 1, 0), group_point(ctx, {0})) == Matrix{{Scalar(0)}});

  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx, {0}), 2);
  dims.emplace(group_point(ctx, {2}), 1);
  ActionTable tz = table_from_spec(ModuleSpec::trivial(ctx, dims), window);
  for (const auto& [key, row] : tz.entries())
    for (const auto& [beta, m] : row) CHECK(m.is_zero());
  CHECK(tz.dim(group_point(ctx, {0})) == 2);
  CHECK(tz.dim(group_point(ctx, {1})) == 0);
  CHECK(tz.entry(GenKey::t(0, 1), group_point(ctx, {0})) == nullptr);
}

TEST_CASE("table entries are window- and shape-checked") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  std::map<GroupElement, std::size_t> dims;
  for (const auto& beta : window) dims.emplace(beta, 1);
  ActionTable table(ctx, window, dims);

  CHECK_THROWS_AS(table.set_entry(GenKey::t(0, 1), group_point(ctx, {2}), Matrix{{Scalar(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(table.set_entry(GenKey::d(0), group_point(ctx, {0}), Matrix::identity(2)),
                  std::invalid_argument);
  CHECK_NOTHROW(table.set_entry(GenKey::d(0), group_point(ctx, {0}), Matrix{{Scalar(3)}}));
}

TEST_CASE("round trips recover kind, class, and the exact table") {
  auto ctx = integer_lattice(1);
  auto ctx2 = integer_lattice(2);
  FieldContext q(0);
  Sampler s(9001);

  struct Fixture {
    GroupContextPtr ctx;
    ModuleKind kind;
    MatrixTuple tuple;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({ctx, ModuleKind::plain, MatrixTuple(1, {Matrix{{Scalar(Rational(2, 3))}}})});
  fixtures.push_back({ctx, ModuleKind::twisted, MatrixTuple(1, {Matrix{{Scalar(-2)}}})});
  fixtures.push_back({ctx, ModuleKind::plain,
                      MatrixTuple(2, {Matrix{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}}})});
  fixtures.push_back({ctx, ModuleKind::twisted, s.commuting_tuple(q, 3, 1, 2)});
  fixtures.push_back({ctx2, ModuleKind::plain, s.commuting_tuple(q, 2, 2, 2)});
  fixtures.push_back({ctx2, ModuleKind::twisted, s.commuting_tuple(q, 3, 2, 1)});

  for (const auto& fixture : fixtures) {
    ModuleSpec spec = fixture.kind == ModuleKind::plain
                          ? ModuleSpec::plain(fixture.ctx, fixture.tuple)
                          : ModuleSpec::twisted(fixture.ctx, fixture.tuple);
    auto window = make_box_window(fixture.ctx, 3);
    ActionTable table = table_from_spec(spec, window);
    RecognitionResult r = recognize(table);
    REQUIRE(r.kind == (fixture.kind == ModuleKind::plain ? RecognizedKind::plain
                                                         : RecognizedKind::twisted));
    REQUIRE(r.spec.has_value());
    CHECK(r.spec->p() == fixture.tuple.p());
    CHECK(rcf_match(r.spec->tuple(), fixture.tuple));
    CHECK(regenerate(r, window) == table);
  }
}

TEST_CASE("recognition sees through a change of basis at every grade") {
  auto ctx = integer_lattice(1);
  FieldContext q(0);
  Sampler s(9100);
  auto window = make_box_window(ctx, 2);

  for (int trial = 0; trial < 6; ++trial) {
    MatrixTuple tuple = s.commuting_tuple(q, 2, 1, 2);
    bool twisted = trial % 2 == 1;
    ModuleSpec spec =
        twisted ? ModuleSpec::twisted(ctx, tuple) : ModuleSpec::plain(ctx, tuple);
    ActionTable gauged = gauge(table_from_spec(spec, window), s, q, 2);
    RecognitionResult r = recognize(gauged);
    REQUIRE(r.kind == (twisted ? RecognizedKind::twisted : RecognizedKind::plain));
    CHECK(rcf_match(r.spec->tuple(), tuple));
    CHECK(regenerate(r, window) == gauged);
  }
}

TEST_CASE("all-zero data is the trivial module") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);

  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx, {0}), 2);
  dims.emplace(group_point(ctx, {2}), 1);
  ModuleSpec spec = ModuleSpec::trivial(ctx, dims);
  ActionTable table = table_from_spec(spec, window);
  RecognitionResult r = recognize(table);
  REQUIRE(r.kind == RecognizedKind::trivial);
  CHECK(r.spec->weight_space_dim(group_point(ctx, {0})) == 2);
  CHECK(r.spec->weight_space_dim(group_point(ctx, {1})) == 0);
  CHECK(regenerate(r, window) == table);

  std::map<GroupElement, std::size_t> uniform;
  for (const auto& beta : window) uniform.emplace(beta, 1);
  ActionTable zero(ctx, window, uniform);
  for (const GenKey& key : generator_keys(ctx))
    for (const auto& beta : window) {
      GroupElement target = gen_degree(key, ctx) + beta;
      if (window.count(target)) zero.set_entry(key, beta, Matrix(1, 1));
    }
  CHECK(recognize(zero).kind == RecognizedKind::trivial);
}

TEST_CASE("inconsistent data is left unclassified") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  ModuleSpec spec = ModuleSpec::plain(ctx, MatrixTuple(1, {Matrix{{Scalar(0)}}}));

  ActionTable bad_d = table_from_spec(spec, window);
  bad_d.set_entry(GenKey::d(0), group_point(ctx, {1}), Matrix{{Scalar(5)}});
  CHECK(recognize(bad_d).kind == RecognizedKind::unknown);

  ActionTable bad_t = table_from_spec(spec, window);
  bad_t.set_entry(GenKey::t(0, 1), group_point(ctx, {0}), Matrix{{Scalar(0)}});
  CHECK(recognize(bad_t).kind == RecognizedKind::unknown);

  ActionTable bad_zero_d = table_from_spec(spec, window);
  for (const auto& beta : window) {
    for (const GenKey& key : generator_keys(ctx)) {
      if (!key.has_d && bad_zero_d.entry(key, beta) != nullptr)
        bad_zero_d.set_entry(key, beta, Matrix(1, 1));
    }
  }
  CHECK(recognize(bad_zero_d).kind == RecognizedKind::unknown);

  std::map<GroupElement, std::size_t> ragged;
  for (const auto& beta : window) ragged.emplace(beta, beta.is_zero() ? 2 : 1);
  ActionTable uneven(ctx, window, ragged);
  uneven.set_entry(GenKey::t(0, 1), group_point(ctx, {1}), Matrix{{Scalar(1)}});
  CHECK(recognize(uneven).kind == RecognizedKind::unknown);
}

TEST_CASE("half-weight classes need the full verification pass") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  MatrixTuple half(1, {Matrix{{Scalar(Rational(1, 2))}}});

  ActionTable plain_table = table_from_spec(ModuleSpec::plain(ctx, half), window);
  RecognitionResult rp = recognize(plain_table);
  REQUIRE(rp.kind == RecognizedKind::plain);
  CHECK(regenerate(rp, window) == plain_table);

  ActionTable twisted_table = table_from_spec(ModuleSpec::twisted(ctx, half), window);
  RecognitionResult rt = recognize(twisted_table);
  REQUIRE(rt.kind == RecognizedKind::twisted);
  CHECK(rt.spec->tuple()[0] == Matrix{{Scalar(Rational(1, 2))}});
  CHECK(regenerate(rt, window) == twisted_table);
}

TEST_CASE("direct sums of one kind fold into a block class") {
  auto ctx = integer_lattice(1);
  auto window = make_box_window(ctx, 2);
  ModuleSpec a = ModuleSpec::plain(ctx, MatrixTuple(1, {Matrix{{Scalar(1)}}}));
  ModuleSpec b = ModuleSpec::plain(ctx, MatrixTuple(2, {Matrix{{Scalar(0), Scalar(1)},
                                                               {Scalar(0), Scalar(0)}}}));
  RecognitionResult r = recognize(table_from_spec(direct_sum({a, b}), window));
  REQUIRE(r.kind == RecognizedKind::plain);
  CHECK(r.spec->p() == 3);
  CHECK(invariant_factors(r.spec->tuple()[0]) ==
        invariant_factors(block_diag({Matrix{{Scalar(1)}},
                                      Matrix{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}}})));

  ModuleSpec c = ModuleSpec::twisted(ctx, MatrixTuple(1, {Matrix{{Scalar(0)}}}));
  CHECK(recognize(table_from_spec(direct_sum({a, c}), window)).kind == RecognizedKind::unknown);
}

TEST_CASE("recognition over a quadratic coefficient lattice") {
  auto qctx = quadratic_lattice(2);
  auto window = make_box_window(qctx, 2);
  Scalar g = Scalar(1) + Scalar::sqrt_of(FieldContext(2));
  ModuleSpec spec = ModuleSpec::plain(qctx, MatrixTuple(1, {Matrix{{g}}}));
  ActionTable table = table_from_spec(spec, window);
  RecognitionResult r = recognize(table);
  REQUIRE(r.kind == RecognizedKind::plain);
  CHECK(r.spec->tuple()[0] == Matrix{{g}});
  CHECK(regenerate(r, window) == table);
}

TEST_CASE("random round trips at classification scale") {
  FieldContext q(0);
  Sampler s(9200);
  for (int trial = 0; trial < 10; ++trial) {
    GroupContextPtr ctx = integer_lattice(1 + s.below(2));
    std::size_t p = 1 + s.below(3);
    MatrixTuple tuple = s.commuting_tuple(q, p, ctx->n(), 2);
    bool twisted = s.chance(1, 2);
    ModuleSpec spec =
        twisted ? ModuleSpec::twisted(ctx, tuple) : ModuleSpec::plain(ctx, tuple);
    auto window = make_box_window(ctx, ctx->n() > 1 ? 2 : 4);
    ActionTable table = table_from_spec(spec, window);
    RecognitionResult r = recognize(table);
    REQUIRE(r.kind == (twisted ? RecognizedKind::twisted : RecognizedKind::plain));
    CHECK(r.spec->p() == p);
    CHECK(rcf_match(r.spec->tuple(), tuple));
    CHECK(regenerate(r, window) == table);
  }
}

TEST_CASE("recognition preconditions") {
  auto ctx = integer_lattice(1);
  std::set<GroupElement> off_window;
  off_window.insert(group_point(ctx, {1}));
  off_window.insert(group_point(ctx, {2}));
  std::map<GroupElement, std::size_t> dims;
  for (const auto& beta : off_window) dims.emplace(beta, 1);
  ActionTable off(ctx, off_window, dims);
  CHECK_THROWS_AS(recognize(off), std::invalid_argument);

  RecognitionResult none;
  CHECK_THROWS_AS(regenerate(none, make_box_window(ctx, 2)), std::domain_error);
}
