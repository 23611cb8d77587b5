#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "dtk/darboux.hpp"

using namespace dtk;

namespace {

std::map<std::string, Rational> P(const Rational &p) { return {{"p", p}}; }

std::set<std::string> bodies(const std::vector<DarbouxObject> &objs) {
  std::set<std::string> s;
  for (const auto &o : objs) s.insert(o.body.to_string());
  return s;
}

const DarbouxObject &find_body(const std::vector<DarbouxObject> &objs, const RationalPoly &b) {
  for (const auto &o : objs)
    if (o.body == b) return o;
  throw std::runtime_error("missing " + b.to_string());
}

// D(L) at a rational point via central differences, exact for polynomials of
// degree <= 2 in each variable.
Rational derivation_oracle(const PlanarSystem &sys, const RationalPoly &l, const Rational &x, const Rational &y) {
  Rational h = rational(1, 7);
  Rational lx = (l(x + h, y) - l(x - h, y)) / (2 * h), ly = (l(x, y + h) - l(x, y - h)) / (2 * h);
  return lx * sys.p(x, y) + ly * sys.q(x, y);
}

}  // namespace

TEST(Cofactor, FamilyExamples) {
  PlanarSystem s2 = family_two(2);
  auto l4 = cofactor_of(s2, parse_poly("1 + 2*y^2"), DarbouxKind::AlgebraicCurve);
  ASSERT_TRUE(l4);
  EXPECT_EQ(l4->cofactor, parse_poly("4*y^2"));
  for (long pn : {-1, 0, 3}) {
    PlanarSystem s = family_two(pn);
    auto e = cofactor_of(s, parse_poly("y^2"), DarbouxKind::ExponentialFactor);
    EXPECT_EQ(e->cofactor, parse_poly("2*y^2*(1 + p*y^2)", P(pn)));
    auto l3 = cofactor_of(s, parse_poly("x + y"), DarbouxKind::AlgebraicCurve);
    EXPECT_EQ(l3->cofactor, parse_poly("1 - x*y + y^2 + p*y^2", P(pn)));
  }
  EXPECT_FALSE(cofactor_of(family_two(1), parse_poly("x"), DarbouxKind::AlgebraicCurve));
}

TEST(BinaryForms, Factorization) {
  auto f = detail::factor_binary_form(parse_poly("x^2*y^2 - y^4"));
  std::set<std::string> s;
  for (const auto &[g, m] : f) s.insert(g.to_string() + "^" + std::to_string(m));
  EXPECT_EQ(s, (std::set<std::string>{"y^2", "x - y^1", "x + y^1"}));
  auto q = detail::factor_binary_form(parse_poly("(x^2 + y^2)*(x^2 - 2*y^2)"));
  EXPECT_EQ(q.size(), 2u);
  for (const auto &[g, m] : q) EXPECT_EQ(g.total_degree(), 2);
}

TEST(BinaryForms, QuadraticReducibility) {
  EXPECT_TRUE(detail::quadratic_reducible(parse_poly("1 - y^2")));
  EXPECT_FALSE(detail::quadratic_reducible(parse_poly("1 - 2*y^2")));
  EXPECT_FALSE(detail::quadratic_reducible(parse_poly("1 + y^2")));
  EXPECT_TRUE(detail::quadratic_reducible(parse_poly("(x + 1)*(y - 2)")));
  EXPECT_TRUE(detail::quadratic_reducible(parse_poly("(x - y + 1)^2")));
  EXPECT_FALSE(detail::quadratic_reducible(parse_poly("x^2 + y")));
  EXPECT_FALSE(detail::quadratic_reducible(parse_poly("x*y - 1")));
}

TEST(Invariants, IrreducibleConicCases) {
  for (Rational p : {Rational(1), Rational(2), rational(1, 2), Rational(-2)}) {
    PlanarSystem sys = family_two(p);
    auto inv = find_algebraic_invariants(sys, 2);
    EXPECT_FALSE(inv.pencil);
    auto conic = parse_poly("1 + p*y^2", P(p));
    std::set<std::string> want{"y", "x - y", "x + y", conic.to_string()};
    // p = 1 carries one more invariant conic, 1 + y (y - x)/2, cofactor y^2 - x y.
    if (p == 1) want.insert("1 - 1/2*x*y + 1/2*y^2");
    EXPECT_EQ(bodies(inv.curves), want) << p;
    EXPECT_EQ(find_body(inv.curves, parse_poly("y")).cofactor, parse_poly("1 + p*y^2", P(p)));
    EXPECT_EQ(find_body(inv.curves, parse_poly("x - y")).cofactor, parse_poly("1 - x*y - y^2 + p*y^2", P(p)));
    EXPECT_EQ(find_body(inv.curves, parse_poly("x + y")).cofactor, parse_poly("1 - x*y + y^2 + p*y^2", P(p)));
    EXPECT_EQ(find_body(inv.curves, conic).cofactor, parse_poly("2*p*y^2", P(p)));
    for (const auto &o : inv.curves)
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
          Rational x = rational(a, 3), y = rational(b, 2);
          EXPECT_EQ(derivation_oracle(sys, o.body, x, y), o.cofactor(x, y) * o.body(x, y));
        }
  }
}

TEST(Invariants, ZeroPLines) {
  for (int d : {1, 2}) {
    auto inv = find_algebraic_invariants(family_two(0), d);
    EXPECT_EQ(bodies(inv.curves), (std::set<std::string>{"y", "x - y", "x + y"}));
  }
}

TEST(Invariants, SquareParameterSplitsConic) {
  // p = -1: 1 - y^2 = (1 - y)(1 + y) is reducible; the lines appear instead.
  auto inv = find_algebraic_invariants(family_two(-1), 2);
  EXPECT_EQ(bodies(inv.curves), (std::set<std::string>{"y", "x - y", "x + y", "1 + y", "1 - y", "1 - 1/2*x*y - 1/2*y^2"}));
  EXPECT_EQ(find_body(inv.curves, parse_poly("1 - 1/2*x*y - 1/2*y^2")).cofactor, parse_poly("-x*y - y^2"));
  auto quarter = find_algebraic_invariants(family_two(rational(-1, 4)), 1);
  EXPECT_EQ(bodies(quarter.curves), (std::set<std::string>{"y", "x - y", "x + y", "1 + 1/2*y", "1 - 1/2*y"}));
}

TEST(Invariants, PencilAndShape) {
  auto star = find_algebraic_invariants(PlanarSystem(parse_poly("x"), parse_poly("y")), 1);
  EXPECT_TRUE(star.pencil);
  EXPECT_THROW(find_algebraic_invariants(PlanarSystem(parse_poly("x + y^2"), parse_poly("y")), 2), SolverIncomplete);
}

TEST(Invariants, RadialCubicIsPencil) {
  // x Q3 - y P3 vanishes: every line through the origin is invariant.
  auto inv = find_algebraic_invariants(PlanarSystem(parse_poly("x - x^3"), parse_poly("y - x^2*y")), 2);
  EXPECT_TRUE(inv.pencil);
}

TEST(Exponential, FamilyTwo) {
  for (long pn : {-1, 0, 1, 2}) {
    auto ex = find_exponential_factors(family_two(pn), 2);
    const auto &y2 = find_body(ex, parse_poly("y^2"));
    EXPECT_EQ(y2.cofactor, parse_poly("2*y^2*(1 + p*y^2)", P(pn)));
    EXPECT_EQ(y2.useful, pn == 0);
    const auto &x = find_body(ex, parse_poly("x"));
    EXPECT_EQ(x.cofactor, family_two(pn).p);
    EXPECT_FALSE(x.useful);
  }
  auto star = cofactor_of(PlanarSystem(parse_poly("x"), parse_poly("y")), parse_poly("x + y"), DarbouxKind::ExponentialFactor);
  EXPECT_EQ(star->cofactor, parse_poly("x + y"));
}

TEST(Relations, FamilyVectors) {
  for (long pn : {-2, -1, 1, 2}) {
    PlanarSystem s = family_two(pn);
    std::vector<DarbouxObject> objs;
    for (const char *l : {"x - y", "x + y"}) objs.push_back(*cofactor_of(s, parse_poly(l), DarbouxKind::AlgebraicCurve));
    objs.push_back(*cofactor_of(s, parse_poly("1 + p*y^2", P(pn)), DarbouxKind::AlgebraicCurve));
    auto basis = solve_exponent_relation(objs);
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0], (std::vector<Rational>{Rational(pn), Rational(-pn), Rational(1)}));
  }
  PlanarSystem s0 = family_two(0);
  std::vector<DarbouxObject> objs{*cofactor_of(s0, parse_poly("x - y"), DarbouxKind::AlgebraicCurve),
                                  *cofactor_of(s0, parse_poly("x + y"), DarbouxKind::AlgebraicCurve),
                                  *cofactor_of(s0, parse_poly("y^2"), DarbouxKind::ExponentialFactor)};
  auto basis = solve_exponent_relation(objs);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (std::vector<Rational>{1, -1, 1}));
  auto single = solve_exponent_relation({*cofactor_of(family_two(1), parse_poly("y"), DarbouxKind::AlgebraicCurve)});
  EXPECT_TRUE(single.empty());
}

namespace {

std::vector<DarbouxObject> family_objects(const Rational &p) {
  PlanarSystem s = family_two(p);
  std::vector<DarbouxObject> o{*cofactor_of(s, parse_poly("x - y"), DarbouxKind::AlgebraicCurve),
                               *cofactor_of(s, parse_poly("x + y"), DarbouxKind::AlgebraicCurve)};
  if (p == 0)
    o.push_back(*cofactor_of(s, parse_poly("y^2"), DarbouxKind::ExponentialFactor));
  else
    o.push_back(*cofactor_of(s, parse_poly("1 + p*y^2", P(p)), DarbouxKind::AlgebraicCurve));
  return o;
}

}  // namespace

TEST(FirstIntegral, FamilyForms) {
  FirstIntegral h1 = build_first_integral(family_objects(1), {1, -1, 1});
  EXPECT_TRUE(h1.verified);
  EXPECT_TRUE(h1.rational);
  EXPECT_EQ(h1.text, "(x - y)*(1 + y^2)/(x + y)");
  EXPECT_EQ(h1.remarkable_values, (std::vector<std::string>{"0", "inf"}));
  EXPECT_TRUE(verify_first_integral(family_two(1), h1));
  FirstIntegral h0 = build_first_integral(family_objects(0), {1, -1, 1});
  EXPECT_FALSE(h0.rational);
  EXPECT_EQ(h0.text, "(x - y)*exp(y^2)/(x + y)");
  EXPECT_TRUE(verify_first_integral(family_two(0), h0));
  EXPECT_THROW(build_first_integral(family_objects(1), {1, 1, 1}), RelationFails);
}

TEST(FirstIntegral, ClearedRationalForm) {
  Rational p = rational(1, 2);
  FirstIntegral h = build_first_integral(family_objects(p), {p, -p, 1});
  EXPECT_TRUE(h.rational);
  EXPECT_EQ(h.scale, 2);
  EXPECT_EQ(h.numerator, parse_poly("(x - y)*(1 + 1/2*y^2)^2"));
  EXPECT_EQ(h.denominator, parse_poly("x + y"));
  EXPECT_EQ(h.text, "(x - y)*(1 + 1/2*y^2)^2/(x + y)");
  FirstIntegral h2 = build_first_integral(family_objects(-2), {-2, 2, 1});
  EXPECT_EQ(h2.text, "(x + y)^2*(1 - 2*y^2)/(x - y)^2");
}

TEST(FirstIntegral, DegenerateAtZero) {
  // The conic family at p = 0 collapses to the constant 1.
  PlanarSystem s = family_two(0);
  std::vector<DarbouxObject> o{*cofactor_of(s, parse_poly("x - y"), DarbouxKind::AlgebraicCurve),
                               *cofactor_of(s, parse_poly("x + y"), DarbouxKind::AlgebraicCurve),
                               DarbouxObject{DarbouxKind::AlgebraicCurve, RationalPoly(Rational(1)), RationalPoly(), true}};
  FirstIntegral h = build_first_integral(o, {0, 0, 1});
  EXPECT_TRUE(h.trivial);
  EXPECT_EQ(h.text, "1");
}

TEST(FirstIntegral, Evaluation) {
  FirstIntegral h1 = build_first_integral(family_objects(1), {1, -1, 1});
  EXPECT_NEAR(evaluate_integral(h1, 2, 1), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(evaluate_integral(h1, 1, -1), PoleOrBranch);
  FirstIntegral h0 = build_first_integral(family_objects(0), {1, -1, 1});
  for (double x : {-3.0, 0.5, 7.0}) EXPECT_DOUBLE_EQ(evaluate_integral(h0, x, 0), 1.0);
  FirstIntegral half = build_first_integral(family_objects(rational(1, 2)), {rational(1, 2), rational(-1, 2), 1});
  EXPECT_THROW(evaluate_integral(half, -2, 1), PoleOrBranch);
}

TEST(FirstIntegral, NumericDerivativeVanishes) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (long pn : {-1, 0, 1, 2}) {
    PlanarSystem s = family_two(pn);
    FirstIntegral h = build_first_integral(family_objects(pn), {Rational(pn == 0 ? 1 : pn), Rational(pn == 0 ? -1 : -pn), 1});
    int checked = 0;
    while (checked < 100) {
      double x = u(rng), y = u(rng);
      if (std::abs(x + y) < 0.05 || x - y < 0.05 || 1 + pn * y * y < 0.05) continue;
      auto [gx, gy] = integral_gradient(h, x, y);
      double px = s.p.eval(x, y), qy = s.q.eval(x, y);
      double dhdt = gx * px + gy * qy;
      EXPECT_LE(std::abs(dhdt), 1e-10 * std::hypot(gx, gy) * std::hypot(px, qy));
      ++checked;
    }
  }
}

TEST(Pipeline, PicksSmallestRelation) {
  auto a1 = darboux_analysis(family_two(1), 2);
  ASSERT_TRUE(a1.integral);
  EXPECT_EQ(a1.relation_dimension, 2u);
  EXPECT_EQ(a1.integral->text, "(x - y)*(1 + y^2)/(x + y)");
  auto a0 = darboux_analysis(family_two(0), 2);
  ASSERT_TRUE(a0.integral);
  EXPECT_EQ(a0.integral->text, "(x - y)*exp(y^2)/(x + y)");
  EXPECT_FALSE(a0.integral->rational);
  auto a2 = darboux_analysis(family_two(-2), 2);
  EXPECT_EQ(a2.integral->text, "(x + y)^2*(1 - 2*y^2)/(x - y)^2");
}
