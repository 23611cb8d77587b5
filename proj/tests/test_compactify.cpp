#include <gtest/gtest.h>

#include "dtk/compactify.hpp"

using namespace dtk;

namespace {

const VarNames UZ{"u", "z"};
const VarNames VZ{"v", "z"};

// Pointwise oracle: at x = 1/z, y = u/z the true chart field is
// u' = (x Q - y P)/x^2, z' = -P/x^2; multiply by z^2 and compare.
void expect_chart_x_matches(const PlanarSystem &sys, const PlanarSystem &chart) {
  for (int a = -3; a <= 3; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int sgn_b : {1, -1}) {
        Rational u = rational(a, 2), z = rational(sgn_b * b, 3);
        Rational x = 1 / z, y = u / z;
        Rational P = sys.p(x, y), Q = sys.q(x, y);
        Rational udot = (x * Q - y * P) / (x * x), zdot = -P / (x * x);
        EXPECT_EQ(chart.p(u, z), z * z * udot);
        EXPECT_EQ(chart.q(u, z), z * z * zdot);
      }
}

}  // namespace

TEST(ChartX, FamilyTwoGivesChartEquation) {
  for (long pn : {-2, -1, 0, 1, 2}) {
    Rational p = pn;
    PlanarSystem c = chart_x(family_two(p));
    EXPECT_EQ(c.p, parse_poly("u^2*(1 - u^2)", {}, UZ));
    EXPECT_EQ(c.q, parse_poly("-z*(z^2 - u + p*u^2 + u^3)", {{"p", p}}, UZ));
    ASSERT_EQ(c.lineage.size(), 1u);
    EXPECT_EQ(c.lineage[0].kind, TransformKind::ChartX);
    EXPECT_EQ(c.lineage[0].factor, RationalPoly::term(1, 0, 2, UZ));
    expect_chart_x_matches(family_two(p), c);
  }
}

TEST(ChartX, PureStar) {
  PlanarSystem c = chart_x(PlanarSystem(parse_poly("x"), parse_poly("y")));
  EXPECT_TRUE(c.p.is_zero());
  EXPECT_EQ(c.q, parse_poly("-z^3", {}, UZ));
}

TEST(ChartX, DiagonalCubes) {
  PlanarSystem sys(parse_poly("x + x^3"), parse_poly("y + y^3"));
  PlanarSystem c = chart_x(sys);
  EXPECT_EQ(c.p, parse_poly("u^3 - u", {}, UZ));
  EXPECT_EQ(c.q, parse_poly("-z*(z^2 + 1)", {}, UZ));
  expect_chart_x_matches(sys, c);
}

TEST(ChartX, RejectsOtherShapes) {
  EXPECT_THROW(chart_x(PlanarSystem(parse_poly("x + x^2"), parse_poly("y"))), ShapeError);
  EXPECT_THROW(chart_x(PlanarSystem(parse_poly("2*x"), parse_poly("y"))), ShapeError);
  EXPECT_THROW(chart_x(PlanarSystem(parse_poly("x + 1"), parse_poly("y + x^3"))), ShapeError);
}

TEST(ChartY, FamilyTwo) {
  for (long pn : {-1, 0, 1}) {
    Rational p = pn;
    PlanarSystem sys = family_two(p);
    PlanarSystem c = chart_y(sys);
    EXPECT_EQ(c.p, parse_poly("1 - v^2", {}, VZ));
    EXPECT_EQ(c.q, parse_poly("-z*(z^2 + p)", {{"p", p}}, VZ));
    // Oracle at x = v/z, y = 1/z.
    for (int a = -2; a <= 2; ++a)
      for (int b : {-2, -1, 1, 3}) {
        Rational v = a, z = rational(b, 2);
        Rational x = v / z, y = 1 / z, P = sys.p(x, y), Q = sys.q(x, y);
        EXPECT_EQ(c.p(v, z), z * z * (y * P - x * Q) / (y * y));
        EXPECT_EQ(c.q(v, z), z * z * (-Q / (y * y)));
      }
  }
  PlanarSystem star = chart_y(PlanarSystem(parse_poly("x"), parse_poly("y")));
  EXPECT_TRUE(star.p.is_zero());
  EXPECT_EQ(star.q, parse_poly("-z^3", {}, VZ));
}

TEST(Equator, PositiveP) {
  auto eq = equator_equilibria(family_two(1));
  ASSERT_EQ(eq.size(), 3u);
  // Sorted by u within chart-x: -1, 0, 1.
  EXPECT_EQ(eq[0].point.x_number().rational_value(), -1);
  EXPECT_EQ(eq[0].kind.to_string(), "hyperbolic-saddle");
  EXPECT_EQ(eq[1].kind.to_string(), "linearly-zero");
  EXPECT_EQ(eq[2].kind.to_string(), "hyperbolic-node(stable)");
  for (const auto &e : eq) EXPECT_EQ(e.context, "chart-x");
}

TEST(Equator, NegativeP) {
  auto eq = equator_equilibria(family_two(-1));
  ASSERT_EQ(eq.size(), 3u);
  EXPECT_EQ(eq[0].kind.to_string(), "hyperbolic-node(unstable)");
  EXPECT_EQ(eq[2].kind.to_string(), "hyperbolic-saddle");
}

TEST(Equator, ZeroPSemiHyperbolic) {
  auto eq = equator_equilibria(family_two(0));
  ASSERT_EQ(eq.size(), 3u);
  EXPECT_EQ(eq[0].kind.to_string(), "semi-hyperbolic(saddle)");
  EXPECT_EQ(eq[2].kind.to_string(), "semi-hyperbolic(node,stable)");
  EXPECT_EQ(eq[2].kind.multiplicity, 3);
  EXPECT_EQ(eq[2].kind.leading_coeff, -1);
}

TEST(Equator, CharacteristicDirections) {
  // Roots of x Q3 - y P3 on x = 1 are the chart-x equator points.
  for (long pn : {-2, 1, 3}) {
    PlanarSystem sys = family_two(pn);
    auto [p3, q3] = darboux_cubic_parts(sys);
    RationalPoly h = RationalPoly::var(0) * q3 - RationalPoly::var(1) * p3;
    UPoly onx = h.partial_eval(0, 1).to_upoly(1);
    auto roots = real_roots(onx);
    auto eq = equator_equilibria(sys);
    ASSERT_EQ(roots.size(), eq.size());
    for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_EQ(compare(roots[i], eq[i].point.x_number()), 0);
  }
}

TEST(Equator, ChartConsistency) {
  // v = 1/u in chart-y is an equilibrium with matching eigenvalue signs.
  for (long pn : {-1, 0, 1}) {
    PlanarSystem sys = family_two(pn);
    PlanarSystem cy = chart_y(sys);
    for (const auto &e : equator_equilibria(sys)) {
      Rational u = e.point.x_number().rational_value();
      if (u == 0) continue;
      AlgebraicPoint v(1 / u, 0);
      ASSERT_TRUE(v.vanishes(cy.p) && v.vanishes(cy.q));
      Equilibrium ey = make_equilibrium(cy, v, "chart-y");
      EXPECT_EQ(ey.kind.to_string(), e.kind.to_string()) << "p=" << pn << " u=" << u;
    }
  }
}

TEST(Equator, FarPointsComeFromChartY) {
  // Directions with |y/x| = 2 live in chart-y.
  PlanarSystem sys(parse_poly("x"), parse_poly("y + 4*x^2*y - y^3"));
  // x Q3 - y P3 = y (4x^2 - y^2) x: u' = 4u - u^3 at z = 0.
  auto eq = equator_equilibria(sys);
  int from_y = 0;
  for (const auto &e : eq) from_y += e.context == "chart-y";
  EXPECT_EQ(eq.size(), 4u);  // u = 0, v = 0, v = +-1/2
  EXPECT_EQ(from_y, 3);
}
