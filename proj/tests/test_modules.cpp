#include <catch2/catch_amalgamated.hpp>

#include "weyl/modules.hpp"
#include "weyl/random.hpp"

using namespace weyl;

namespace {

AlgebraElement t_pow(const GroupContextPtr& ctx, long k) {
  return AlgebraElement::t_power(group_point(ctx, {k}));
}

ModuleSpec rank1_plain(const GroupContextPtr& ctx, const Scalar& g) {
  return ModuleSpec::plain(ctx, MatrixTuple(1, {Matrix{{g}}}));
}

ModuleSpec rank1_twisted(const GroupContextPtr& ctx, const Scalar& g) {
  return ModuleSpec::twisted(ctx, MatrixTuple(1, {Matrix{{g}}}));
}

/// Matrix of act(x) restricted to grade beta, as a map into grade beta + deg x.
Matrix action_matrix(const ModuleSpec& spec, const AlgebraElement& x, const GroupElement& beta,
                     const GroupElement& target) {
  std::size_t p = spec.weight_space_dim(beta), q = spec.weight_space_dim(target);
  Matrix m(q, p);
  for (std::size_t j = 0; j < p; ++j) {
    ModuleVector out = act(spec, x, ModuleVector::basis(beta, j));
    for (const auto& [key, value] : out.entries()) {
      REQUIRE(key.first == target);
      m.at(key.second, j) = value;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("commuting constraint on matrix tuples") {
  Matrix j2{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
  Matrix d01{{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1)}};
  CHECK_THROWS_AS(MatrixTuple(2, {d01, j2}), std::invalid_argument);
  CHECK_NOTHROW(MatrixTuple(2, {Matrix::identity(2), j2}));
  CHECK_NOTHROW(MatrixTuple(2, {j2, j2}));
  CHECK_THROWS_AS(MatrixTuple(2, {Matrix::identity(3)}), std::invalid_argument);
  CHECK_THROWS_AS(MatrixTuple(0, {}), std::invalid_argument);
}

TEST_CASE("plain action on rank one") {
  auto ctx = integer_lattice(1);
  Scalar g(Rational(1, 2));
  ModuleSpec spec = rank1_plain(ctx, g);

  GroupElement beta = group_point(ctx, {2});
  AlgebraElement td2 = AlgebraElement::term(group_point(ctx, {1}), {2});
  ModuleVector out = act(spec, td2, ModuleVector::basis(beta, 0));
  ModuleVector expect = ModuleVector::basis(group_point(ctx, {3}), 0,
                                            (Scalar(2) + g) * (Scalar(2) + g));
  CHECK(out == expect);

  CHECK(act(spec, AlgebraElement::one(ctx), ModuleVector::basis(beta, 0)) ==
        ModuleVector::basis(beta, 0));

  ModuleVector dv = act(spec, AlgebraElement::derivation(ctx, 0), ModuleVector::basis(beta, 0));
  CHECK(dv == ModuleVector::basis(beta, 0, Scalar(2) + g));
}

TEST_CASE("twisted action flips sign and reads the target weight") {
  auto ctx = integer_lattice(1);
  Scalar g(Rational(1, 2));
  ModuleSpec spec = rank1_twisted(ctx, g);
  GroupElement beta = group_point(ctx, {2});

  CHECK(act(spec, t_pow(ctx, 1), ModuleVector::basis(beta, 0)) ==
        ModuleVector::basis(group_point(ctx, {3}), 0, Scalar(-1)));

  // t D^2 on y_2: sign (-1)^{2+1} and weight at target grade 3.
  AlgebraElement td2 = AlgebraElement::term(group_point(ctx, {1}), {2});
  CHECK(act(spec, td2, ModuleVector::basis(beta, 0)) ==
        ModuleVector::basis(group_point(ctx, {3}), 0, Scalar(-1) * (Scalar(3) + g) * (Scalar(3) + g)));

  CHECK(act(spec, AlgebraElement::one(ctx), ModuleVector::basis(beta, 0)) ==
        ModuleVector::basis(beta, 0, Scalar(-1)));
}

TEST_CASE("trivial modules kill the whole algebra") {
  auto ctx = integer_lattice(1);
  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx, {0}), 2);
  dims.emplace(group_point(ctx, {3}), 1);
  ModuleSpec spec = ModuleSpec::trivial(ctx, dims);

  CHECK(spec.weight_space_dim(group_point(ctx, {0})) == 2);
  CHECK(spec.weight_space_dim(group_point(ctx, {3})) == 1);
  CHECK(spec.weight_space_dim(group_point(ctx, {1})) == 0);

  ModuleVector v = ModuleVector::basis(group_point(ctx, {0}), 1);
  CHECK(act(spec, AlgebraElement::one(ctx), v).is_zero());
  CHECK(act(spec, t_pow(ctx, 3) + AlgebraElement::derivation(ctx, 0), v).is_zero());
}

TEST_CASE("module axiom for the Lie bracket across kinds") {
  struct Fixture {
    ModuleSpec spec;
    std::uint64_t seed;
  };
  auto ctx1 = integer_lattice(1);
  auto ctx2 = integer_lattice(2);
  auto qctx = quadratic_lattice(2);
  Sampler gen(7001);
  FieldContext q(0), q2(2);

  std::vector<Fixture> fixtures;
  fixtures.push_back({rank1_plain(ctx1, Scalar(Rational(1, 3))), 1});
  fixtures.push_back({rank1_twisted(ctx1, Scalar(2)), 2});
  fixtures.push_back(
      {ModuleSpec::plain(ctx2, gen.commuting_tuple(q, 2, 2, 2)), 3});
  fixtures.push_back(
      {ModuleSpec::twisted(ctx2, gen.commuting_tuple(q, 3, 2, 1)), 4});
  fixtures.push_back({ModuleSpec::plain(qctx, gen.commuting_tuple(q2, 2, 1, 1)), 5});
  fixtures.push_back({ModuleSpec::twisted(qctx, gen.commuting_tuple(q2, 2, 1, 1)), 6});
  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx1, {0}), 1);
  fixtures.push_back({ModuleSpec::trivial(ctx1, dims), 7});
  fixtures.push_back({ModuleSpec::direct_sum({rank1_plain(ctx1, Scalar(1)),
                                              rank1_twisted(ctx1, Scalar(-1)),
                                              ModuleSpec::trivial(ctx1, dims)}),
                      8});

  for (const auto& fixture : fixtures) {
    Sampler s(fixture.seed);
    const auto& ctx = fixture.spec.context();
    for (int trial = 0; trial < 25; ++trial) {
      AlgebraElement x = s.element(ctx, 2, 2, 3);
      AlgebraElement y = s.element(ctx, 2, 2, 3);
      ModuleVector v = s.module_vector(fixture.spec, 2, 3);
      ModuleVector lhs = act(fixture.spec, bracket(x, y), v);
      ModuleVector rhs = act(fixture.spec, x, act(fixture.spec, y, v)) -
                         act(fixture.spec, y, act(fixture.spec, x, v));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("associative law holds plainly and fails twisted") {
  auto ctx = integer_lattice(1);
  Sampler s(7100);
  ModuleSpec plain = rank1_plain(ctx, Scalar(Rational(2, 3)));
  for (int trial = 0; trial < 40; ++trial) {
    AlgebraElement x = s.element(ctx, 2, 3, 3);
    AlgebraElement y = s.element(ctx, 2, 3, 3);
    ModuleVector v = s.module_vector(plain, 2, 3);
    CHECK(act(plain, x * y, v) == act(plain, x, act(plain, y, v)));
  }

  for (const ModuleSpec& spec :
       {rank1_twisted(ctx, Scalar(0)), rank1_twisted(ctx, Scalar(Rational(5, 7))),
        ModuleSpec::twisted(ctx, MatrixTuple(2, {Matrix{{Scalar(0), Scalar(1)},
                                                        {Scalar(0), Scalar(0)}}}))}) {
    AlgebraElement t = t_pow(ctx, 1);
    ModuleVector v = ModuleVector::basis(group_point(ctx, {0}), 0);
    CHECK(act(spec, t * t, v) != act(spec, t, act(spec, t, v)));
  }
}

TEST_CASE("twist agrees with composing the sign automorphism") {
  auto ctx1 = integer_lattice(1);
  auto qctx = quadratic_lattice(2);
  Sampler gen(7200);
  FieldContext q(0), q2(2);
  std::vector<std::pair<GroupContextPtr, MatrixTuple>> data;
  data.emplace_back(ctx1, MatrixTuple(1, {Matrix{{Scalar(Rational(1, 2))}}}));
  data.emplace_back(ctx1, gen.commuting_tuple(q, 3, 1, 2));
  data.emplace_back(qctx, gen.commuting_tuple(q2, 2, 1, 1));

  for (const auto& [ctx, tuple] : data) {
    ModuleSpec plain = ModuleSpec::plain(ctx, tuple);
    ModuleSpec twisted = ModuleSpec::twisted(ctx, tuple);
    Sampler s(7300);
    for (int trial = 0; trial < 30; ++trial) {
      AlgebraElement x = s.element(ctx, 3, 3, 3);
      ModuleVector v = s.module_vector(twisted, 2, 3);
      CHECK(act(twisted, x, v) == act(plain, sigma(x), v));
    }
  }
}

TEST_CASE("actions respect the grading") {
  auto ctx = integer_lattice(2);
  Sampler gen(7400);
  ModuleSpec spec = ModuleSpec::plain(ctx, gen.commuting_tuple(FieldContext(0), 2, 2, 2));
  Sampler s(7401);
  for (int trial = 0; trial < 30; ++trial) {
    GroupElement alpha = s.point(ctx, 3);
    AlgebraElement x = AlgebraElement::term(alpha, s.exponents(2, 3),
                                            s.nonzero_scalar(FieldContext(0), 3));
    GroupElement beta = s.point(ctx, 3);
    ModuleVector out = act(spec, x, ModuleVector::basis(beta, s.below(2)));
    for (const auto& [key, value] : out.entries()) CHECK(key.first == alpha + beta);
  }
}

TEST_CASE("derivations act diagonalizably exactly when the tuple does") {
  auto ctx = integer_lattice(1);
  FieldContext q(0);
  Matrix swap{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
  Matrix j2{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};

  for (long b = -2; b <= 2; ++b) {
    GroupElement beta = group_point(ctx, {b});
    ModuleSpec good = ModuleSpec::plain(ctx, MatrixTuple(2, {swap}));
    Matrix action = action_matrix(good, AlgebraElement::derivation(ctx, 0), beta, beta);
    CHECK(is_diagonalizable(action, q));

    ModuleSpec bad = ModuleSpec::plain(ctx, MatrixTuple(2, {j2}));
    action = action_matrix(bad, AlgebraElement::derivation(ctx, 0), beta, beta);
    CHECK_FALSE(is_diagonalizable(action, q));
  }
  CHECK(is_diagonalizable(swap, q));
  CHECK_FALSE(is_diagonalizable(j2, q));
}

TEST_CASE("direct sums act blockwise") {
  auto ctx = integer_lattice(1);
  ModuleSpec a = rank1_plain(ctx, Scalar(1));
  ModuleSpec b = rank1_twisted(ctx, Scalar(Rational(-1, 2)));
  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx, {1}), 2);
  ModuleSpec c = ModuleSpec::trivial(ctx, dims);
  ModuleSpec sum = direct_sum({a, b, c});

  CHECK(sum.weight_space_dim(group_point(ctx, {1})) == 4);
  CHECK(sum.weight_space_dim(group_point(ctx, {0})) == 2);

  Sampler s(7500);
  for (int trial = 0; trial < 30; ++trial) {
    AlgebraElement x = s.element(ctx, 2, 3, 3);
    GroupElement beta = s.point(ctx, 2);
    GroupElement from = beta;

    // Component 0 belongs to the plain summand, component 1 to the twisted one.
    ModuleVector v0 = ModuleVector::basis(from, 0);
    ModuleVector sub = act(a, x, ModuleVector::basis(from, 0));
    ModuleVector whole = act(sum, x, v0);
    ModuleVector lifted(ctx);
    for (const auto& [key, value] : sub.entries()) lifted.add(key.first, 0, value);
    CHECK(whole == lifted);

    ModuleVector v1 = ModuleVector::basis(from, 1);
    sub = act(b, x, ModuleVector::basis(from, 0));
    whole = act(sum, x, v1);
    ModuleVector lifted1(ctx);
    for (const auto& [key, value] : sub.entries()) lifted1.add(key.first, 1, value);
    CHECK(whole == lifted1);
  }

  // Components 2..3 at grade 1 are the trivial block.
  CHECK(act(sum, t_pow(ctx, 1), ModuleVector::basis(group_point(ctx, {1}), 2)).is_zero());
  CHECK(act(sum, t_pow(ctx, 1), ModuleVector::basis(group_point(ctx, {1}), 3)).is_zero());
  CHECK_THROWS_AS(act(sum, t_pow(ctx, 1), ModuleVector::basis(group_point(ctx, {0}), 2)),
                  std::out_of_range);
}

TEST_CASE("indecomposability and irreducibility criteria") {
  auto ctx = integer_lattice(1);
  auto ctx2 = integer_lattice(2);
  Matrix j2{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
  Matrix d01{{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1)}};

  CHECK(is_indecomposable_spec(rank1_plain(ctx, Scalar(5))));
  CHECK(is_indecomposable_spec(rank1_twisted(ctx, Scalar(0))));
  CHECK(is_indecomposable_spec(ModuleSpec::plain(ctx2, MatrixTuple(2, {Matrix::identity(2), j2}))));
  CHECK_FALSE(is_indecomposable_spec(ModuleSpec::plain(ctx2, MatrixTuple(2, {d01, d01}))));
  CHECK(is_indecomposable_spec(ModuleSpec::plain(ctx, MatrixTuple(2, {j2}))));
  CHECK_FALSE(is_indecomposable_spec(ModuleSpec::plain(ctx, MatrixTuple(2, {d01}))));

  std::map<GroupElement, std::size_t> dims;
  dims.emplace(group_point(ctx, {0}), 1);
  CHECK_THROWS_AS(is_indecomposable_spec(ModuleSpec::trivial(ctx, dims)), std::domain_error);
  CHECK_THROWS_AS(
      is_indecomposable_spec(direct_sum({rank1_plain(ctx, Scalar(1)), rank1_plain(ctx, Scalar(2))})),
      std::domain_error);

  CHECK(is_irreducible(rank1_plain(ctx, Scalar(1))));
  CHECK(is_irreducible(rank1_twisted(ctx, Scalar(1))));
  CHECK_FALSE(is_irreducible(ModuleSpec::plain(ctx, MatrixTuple(2, {j2}))));
  CHECK_FALSE(is_irreducible(direct_sum({rank1_plain(ctx, Scalar(1))})));
  CHECK_THROWS_AS(is_irreducible(ModuleSpec::trivial(ctx, dims)), std::domain_error);
}

TEST_CASE("extended elements act through their bodies") {
  auto ctx = integer_lattice(1);
  ModuleSpec spec = rank1_plain(ctx, Scalar(Rational(1, 4)));
  Sampler s(7600);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebraElement x = s.element(ctx, 2, 2, 3);
    AlgebraElement y = s.element(ctx, 2, 2, 3);
    ModuleVector v = s.module_vector(spec, 2, 3);

    ExtendedElement c = ExtendedElement::central_generator(ctx);
    CHECK(act_extended(spec, c, v).is_zero());
    CHECK(act_extended(spec, ExtendedElement(x), v) == act(spec, x, v));
    CHECK(act_extended(spec, ExtendedElement(x, Scalar(7)), v) == act(spec, x, v));

    ExtendedElement bx(x, s.scalar(FieldContext(0), 2));
    ExtendedElement by(y, s.scalar(FieldContext(0), 2));
    ModuleVector lhs = act_extended(spec, extended_bracket(bx, by), v);
    ModuleVector rhs = act_extended(spec, bx, act_extended(spec, by, v)) -
                       act_extended(spec, by, act_extended(spec, bx, v));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("weight space dimensions") {
  auto ctx = integer_lattice(1);
  ModuleSpec p3 = ModuleSpec::plain(ctx, MatrixTuple(3, {Matrix::identity(3)}));
  for (long b = -3; b <= 3; ++b)
    CHECK(weight_space_dim(p3, group_point(ctx, {b})) == 3);

  ModuleSpec sum = direct_sum({rank1_plain(ctx, Scalar(1)),
                               ModuleSpec::twisted(ctx, MatrixTuple(2, {Matrix::identity(2)}))});
  CHECK(weight_space_dim(sum, group_point(ctx, {5})) == 3);
}
