#include <catch2/catch_amalgamated.hpp>

#include "weyl/random.hpp"
#include "weyl/solver.hpp"

using namespace weyl;

namespace {

Rational falling_from(long top, unsigned long count) {
  Rational out = 1;
  for (unsigned long d = 0; d < count; ++d) out *= Rational(top - static_cast<long>(d));
  return out;
}

Rational plain_value(int family, long) { return family == 0 ? 1 : 0; }

Rational twisted_value(int family, long i) {
  Rational sign = (i % 2 == 0) ? -1 : 1;
  return sign * falling_from(i - 1, static_cast<unsigned long>(family));
}

const SolutionFamily& family_with(const SolveReport& report, const Rational& c) {
  for (const auto& fam : report.families)
    if (fam.c == c) return fam;
  FAIL("no family with c = " << c.get_str());
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("rational functions reduce and evaluate") {
  Poly<Rational> num(std::vector<Rational>{-1, 0, 1});
  Poly<Rational> den(std::vector<Rational>{-1, 1});
  RationalFunction f(num, den);
  CHECK(f.num() == Poly<Rational>(std::vector<Rational>{1, 1}));
  CHECK(f.den() == Poly<Rational>(Rational(1)));
  CHECK(f.eval(3) == 4);

  RationalFunction c = RationalFunction::variable();
  RationalFunction g = (c * c - RationalFunction(Rational(1))) / (c + RationalFunction(Rational(1)));
  CHECK(g.num() == Poly<Rational>(std::vector<Rational>{-1, 1}));
  CHECK(g.eval(5) == 4);
  CHECK_THROWS_AS(g / RationalFunction(), std::domain_error);

  RationalFunction pole(Poly<Rational>(Rational(1)), Poly<Rational>(std::vector<Rational>{-2, 1}));
  CHECK_THROWS_AS(pole.eval(2), std::domain_error);

  CHECK(RationalFunction().is_zero());
  CHECK((c - c).is_zero());
  CHECK(format_unknown(UnknownId{2, -3}) == "R[-3]");
}

TEST_CASE("constraint generation covers the bracket relations") {
  CHECK_THROWS_AS(gen_constraints(2), std::invalid_argument);

  ConstraintSystem system = gen_constraints(3);
  CHECK(system.range == 3);
  CHECK(system.equations.size() > 100);
  for (const auto& eq : system.equations) {
    CHECK(!eq.tag.empty());
    for (const auto& [key, v] : eq.quad) CHECK(v.den() == Poly<Rational>(Rational(1)));
    for (const auto& [u, v] : eq.lin) CHECK(v.den() == Poly<Rational>(Rational(1)));
    CHECK(eq.cst.den() == Poly<Rational>(Rational(1)));
  }
}

TEST_CASE("degree-three ansatz admits exactly the two sign families") {
  SolveReport report = solve_p1(4);

  REQUIRE(report.families.size() == 2);
  CHECK(report.families[0].c == 1);
  CHECK(report.families[1].c == -1);

  auto roots = rational_roots(report.residual_gcd);
  CHECK(std::count(roots.begin(), roots.end(), Rational(1)) == 1);
  CHECK(std::count(roots.begin(), roots.end(), Rational(-1)) == 1);

  const SolutionFamily& plain = family_with(report, 1);
  const SolutionFamily& twisted = family_with(report, -1);
  CHECK(plain.values.size() == 36);
  CHECK(twisted.values.size() == 36);
  for (long i = -4; i <= 4; ++i)
    for (int family = 0; family < 4; ++family) {
      UnknownId u{family, i};
      CHECK(plain.values.at(u) == plain_value(family, i));
      CHECK(twisted.values.at(u) == twisted_value(family, i));
    }
}

TEST_CASE("pinning the central value filters the same families") {
  ConstraintSystem system = gen_constraints(3);
  CHECK(admits_solution(system, Rational(1)));
  CHECK(admits_solution(system, Rational(-1)));
  CHECK_FALSE(admits_solution(system, Rational(2)));
  CHECK_FALSE(admits_solution(system, Rational(0)));
  CHECK_FALSE(admits_solution(system, Rational(1, 2)));
}

TEST_CASE("solved families satisfy the bracket relations numerically") {
  SolveReport report = solve_p1(4);
  auto ctx = integer_lattice(1);
  Sampler sampler(907);

  for (const auto& fam : report.families) {
    for (int trial = 0; trial < 60; ++trial) {
      long xi = sampler.range(-4, 4);
      long yi = sampler.range(-4, 4);
      auto xj = static_cast<unsigned long>(sampler.range(0, 3));
      auto yj = static_cast<unsigned long>(sampler.range(0, 3));
      AlgebraElement lie = bracket(from_ddt(ctx, xi, xj), from_ddt(ctx, yi, yj));

      std::map<std::pair<long, unsigned long>, Rational> expansion;
      bool in_range = true;
      for (const auto& [mono, coeff] : lie.terms()) {
        long alpha = mono.alpha[0].as_long();
        for (unsigned long f = 0; f <= mono.mu[0]; ++f) {
          Rational c = coeff.as_rational() * Rational(stirling_second(mono.mu[0], f));
          if (c != 0) expansion[{alpha + static_cast<long>(f), f}] += c;
        }
      }
      for (const auto& [key, coeff] : expansion)
        if (std::labs(key.first) > 4 || key.second > 3) in_range = false;
      if (!in_range) continue;

      long n = sampler.range(-6, 6);
      long sx = xi - static_cast<long>(xj);
      long sy = yi - static_cast<long>(yj);
      Rational lhs = family_action(fam, yi, yj, n) * family_action(fam, xi, xj, n + sy) -
                     family_action(fam, xi, xj, n) * family_action(fam, yi, yj, n + sx);
      Rational rhs = 0;
      for (const auto& [key, coeff] : expansion)
        rhs += coeff * family_action(fam, key.first, key.second, n);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("families realize as recognizable rank-one tables") {
  SolveReport report = solve_p1(4);
  const SolutionFamily& plain = family_with(report, 1);
  const SolutionFamily& twisted = family_with(report, -1);

  ActionTable plain_table = family_to_table(plain);
  RecognitionResult plain_rec = recognize(plain_table);
  REQUIRE(plain_rec.kind == RecognizedKind::plain);
  REQUIRE(plain_rec.spec.has_value());
  CHECK(plain_rec.spec->tuple()[0] == Matrix{{Scalar(Rational(0))}});
  CHECK(regenerate(plain_rec, plain_table.window()) == plain_table);

  ActionTable twisted_table = family_to_table(twisted);
  RecognitionResult twisted_rec = recognize(twisted_table);
  REQUIRE(twisted_rec.kind == RecognizedKind::twisted);
  REQUIRE(twisted_rec.spec.has_value());
  CHECK(regenerate(twisted_rec, twisted_table.window()) == twisted_table);

  CHECK_THROWS_AS(family_to_table(SolutionFamily{}), std::invalid_argument);
}

TEST_CASE("the sign automorphism swaps the two families") {
  SolveReport report = solve_p1(4);
  const SolutionFamily& plain = family_with(report, 1);
  const SolutionFamily& twisted = family_with(report, -1);

  SolutionFamily image = sigma_image_family(plain);
  CHECK(image.c == -1);
  CHECK(image.values.size() >= 30);
  for (const auto& [u, v] : image.values) CHECK(v == twisted.values.at(u));

  SolutionFamily back = sigma_image_family(twisted);
  CHECK(back.c == 1);
  for (const auto& [u, v] : back.values) CHECK(v == plain.values.at(u));
}
