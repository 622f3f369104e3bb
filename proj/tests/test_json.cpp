#include <catch2/catch_amalgamated.hpp>

#include "weyl/json_io.hpp"
#include "weyl/random.hpp"

using namespace weyl;

TEST_CASE("context serialization round trips") {
  for (const auto& ctx :
       {integer_lattice(1), integer_lattice(2), quadratic_lattice(2)}) {
    nlohmann::json j = context_to_json(ctx);
    GroupContextPtr back = context_from_json(j);
    CHECK(*back == *ctx);
    CHECK(context_to_json(back).dump(2) == j.dump(2));
  }

  nlohmann::json j = context_to_json(quadratic_lattice(2));
  CHECK(j["d"] == 2);
  CHECK(j["n"] == 1);
  CHECK(j["generators"].size() == 2);
}

TEST_CASE("element serialization is bit-exact") {
  Sampler sampler(5501);
  for (const auto& ctx :
       {integer_lattice(1), integer_lattice(2), quadratic_lattice(2)}) {
    for (int trial = 0; trial < 25; ++trial) {
      AlgebraElement x = sampler.element(ctx, 5, 4, 6);
      nlohmann::json j = element_to_json(x, "ctx.json");
      AlgebraElement back = element_from_json(j, ctx);
      CHECK(back == x);
      CHECK(element_to_json(back, "ctx.json").dump() == j.dump());
    }
  }

  auto ctx = integer_lattice(2);
  nlohmann::json bad = element_to_json(AlgebraElement::one(ctx), "c");
  bad["terms"][0]["mu"] = {0, 0, 0};
  CHECK_THROWS_AS(element_from_json(bad, ctx), std::invalid_argument);
}

TEST_CASE("module specs of every kind round trip") {
  auto ctx = integer_lattice(2);
  auto field = ctx->field();

  MatrixTuple g(2, {Matrix{{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}},
                    Matrix{{Scalar(Rational(1, 2)), Scalar(0)}, {Scalar(0), Scalar(Rational(1, 2))}}});
  ModuleSpec plain = ModuleSpec::plain(ctx, g);
  ModuleSpec twisted = ModuleSpec::twisted(ctx, g);
  ModuleSpec trivial = ModuleSpec::trivial(
      ctx, {{GroupElement::zero(ctx), 2}, {GroupElement(ctx, {Scalar(1), Scalar(0)}), 1}});
  ModuleSpec sum = ModuleSpec::direct_sum({plain, twisted, trivial});

  for (const ModuleSpec& spec : {plain, twisted, trivial, sum}) {
    nlohmann::json j = spec_to_json(spec, "ctx.json");
    ModuleSpec back = spec_from_json(j, ctx);
    CHECK(back == spec);
    CHECK(spec_to_json(back, "ctx.json").dump() == j.dump());
  }

  nlohmann::json j = spec_to_json(plain, "ctx.json");
  CHECK(j["kind"] == "plain");
  CHECK(j["p"] == 2);
  CHECK(j["G"].size() == 2);
  CHECK(j["G"][0].size() == 4);

  j["kind"] = "mystery";
  CHECK_THROWS_AS(spec_from_json(j, ctx), std::invalid_argument);
  j["kind"] = "plain";
  j["G"] = {j["G"][0]};
  CHECK_THROWS_AS(spec_from_json(j, ctx), std::invalid_argument);
  (void)field;
}

TEST_CASE("module vectors use one-based components at the boundary") {
  auto ctx = integer_lattice(1);
  ModuleVector v(ctx);
  v.add(GroupElement(ctx, {Scalar(2)}), 0, Scalar(Rational(3, 2)));
  v.add(GroupElement(ctx, {Scalar(-1)}), 2, Scalar(1));

  nlohmann::json j = vector_to_json(v, "ctx.json");
  CHECK(j["entries"][0]["component"] == 3);
  CHECK(j["entries"][1]["component"] == 1);

  ModuleVector back = vector_from_json(j, ctx);
  CHECK(back == v);
  CHECK(vector_to_json(back, "ctx.json").dump() == j.dump());

  j["entries"][0]["component"] = 0;
  CHECK_THROWS_AS(vector_from_json(j, ctx), std::invalid_argument);
}

TEST_CASE("action tables round trip through json") {
  auto ctx = integer_lattice(1);
  MatrixTuple g(2, {Matrix{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}}});
  ModuleSpec spec = ModuleSpec::twisted(ctx, g);
  ActionTable table = table_from_spec(spec, make_box_window(ctx, 2));

  nlohmann::json j = table_to_json(table, "ctx.json");
  ActionTable back = table_from_json(j, ctx);
  CHECK(back == table);
  CHECK(table_to_json(back, "ctx.json").dump(2) == j.dump(2));

  RecognitionResult rec = recognize(back);
  CHECK(rec.kind == RecognizedKind::twisted);

  nlohmann::json bad = j;
  bad["action"][0]["matrix"] = {"1"};
  CHECK_THROWS_AS(table_from_json(bad, ctx), std::invalid_argument);

  nlohmann::json sparse = table_to_json(
      ActionTable(ctx, make_box_window(ctx, 2), {{GroupElement::zero(ctx), 2}}), "ctx.json");
  ActionTable sparse_back = table_from_json(sparse, ctx);
  CHECK(sparse_back.dims().at(GroupElement::zero(ctx)) == 2);
  CHECK(sparse_back.dims().at(GroupElement(ctx, {Scalar(1)})) == 0);
}

TEST_CASE("quadratic lattice points survive key encoding") {
  auto qctx = quadratic_lattice(2);
  Scalar root = Scalar::sqrt_of(qctx->field());
  GroupElement g(qctx, {Scalar(2) - root});
  CHECK(point_from_key(point_key(g), qctx) == g);

  auto ctx2 = integer_lattice(2);
  GroupElement h(ctx2, {Scalar(3), Scalar(-2)});
  CHECK(point_key(h) == "3,-2");
  CHECK(point_from_key("3,-2", ctx2) == h);
}

TEST_CASE("solver reports serialize with named unknowns") {
  SolveReport report;
  SolutionFamily fam;
  fam.c = -1;
  fam.range = 4;
  fam.values[UnknownId{0, 1}] = 1;
  fam.values[UnknownId{2, 0}] = -2;
  report.families.push_back(fam);
  report.residual_gcd = Poly<Rational>(std::vector<Rational>{-1, 0, 1});
  report.log = {"P[1] from [w(1,1),w(1,0)] @ n^0"};

  nlohmann::json j = report_to_json(report);
  CHECK(j["residual_gcd"] == "c^2 - 1");
  CHECK(j["families"][0]["c"] == "-1");
  CHECK(j["families"][0]["values"][0]["family"] == "P");
  CHECK(j["families"][0]["values"][0]["index"] == 1);
  CHECK(j["families"][0]["values"][1]["family"] == "R");
  CHECK(j["families"][0]["values"][1]["value"] == "-2");
  CHECK(j["log"].size() == 1);
}
