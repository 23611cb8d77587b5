#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dtk/compactify.hpp"
#include "dtk/equilibria.hpp"

using namespace dtk;

TEST(Family, Instances) {
  EXPECT_EQ(family_two(1), PlanarSystem(parse_poly("x - x^2*y + x*y^2 + y^3"), parse_poly("y + y^3")));
  EXPECT_EQ(family_two(0), PlanarSystem(parse_poly("x - x^2*y + y^3"), parse_poly("y")));
  EXPECT_EQ(family_two(-1), PlanarSystem(parse_poly("x - x^2*y - x*y^2 + y^3"), parse_poly("y - y^3")));
}

TEST(Jacobian, ChartPoints) {
  for (long pn : {-2, -1, 0, 1, 2}) {
    PlanarSystem uz = chart_x(family_two(pn));
    ExactMatrix j1 = jacobian_at(uz, AlgebraicPoint(1, 0));
    EXPECT_EQ(*j1.rational_entry(0, 0), -2);
    EXPECT_EQ(*j1.rational_entry(0, 1), 0);
    EXPECT_EQ(*j1.rational_entry(1, 0), 0);
    EXPECT_EQ(*j1.rational_entry(1, 1), -pn);
    ExactMatrix j2 = jacobian_at(uz, AlgebraicPoint(-1, 0));
    EXPECT_EQ(*j2.rational_entry(0, 0), 2);
    EXPECT_EQ(*j2.rational_entry(1, 1), -pn);
    EXPECT_TRUE(jacobian_at(uz, AlgebraicPoint(0, 0)).is_zero());
  }
}

TEST(Jacobian, HandDifferentiated) {
  ExactMatrix j = jacobian_at(family_two(-1), AlgebraicPoint(1, 1));
  EXPECT_EQ(*j.rational_entry(0, 0), -2);
  EXPECT_EQ(*j.rational_entry(0, 1), 0);
  EXPECT_EQ(*j.rational_entry(1, 0), 0);
  EXPECT_EQ(*j.rational_entry(1, 1), -2);
}

TEST(Jacobian, AgreesWithFiniteDifferences) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  PlanarSystem sys = family_two(rational(3, 2));
  for (int trial = 0; trial < 20; ++trial) {
    Rational x = rational(num(rng), den(rng)), y = rational(num(rng), den(rng));
    ExactMatrix j = jacobian_at(sys, AlgebraicPoint(x, y));
    double xd = x.get_d(), yd = y.get_d(), h = 1e-6;
    const RationalPoly *comp[2] = {&sys.p, &sys.q};
    for (int r = 0; r < 2; ++r) {
      double dx = (comp[r]->eval(xd + h, yd) - comp[r]->eval(xd - h, yd)) / (2 * h);
      double dy = (comp[r]->eval(xd, yd + h) - comp[r]->eval(xd, yd - h)) / (2 * h);
      double ex = j.entry(r, 0), ey = j.entry(r, 1);
      EXPECT_NEAR(dx, ex, 1e-8 * std::max(1.0, std::abs(ex)));
      EXPECT_NEAR(dy, ey, 1e-8 * std::max(1.0, std::abs(ey)));
    }
  }
}

TEST(Jacobian, OriginIsIdentityStar) {
  for (long pn : {-3, 0, 4}) {
    ExactMatrix j = jacobian_at(family_two(pn), AlgebraicPoint(0, 0));
    EXPECT_EQ(*j.rational_entry(0, 0), 1);
    EXPECT_EQ(*j.rational_entry(1, 1), 1);
    EXPECT_EQ(*j.rational_entry(0, 1), 0);
    EXPECT_EQ(*j.rational_entry(1, 0), 0);
    ClassificationTag t = classify_linear(j);
    EXPECT_TRUE(t.star);
    EXPECT_EQ(t.to_string(), "hyperbolic-node(unstable)");
  }
}

TEST(InvariantLines, Cofactors) {
  for (long pn : {-1, 0, 2}) {
    Rational p = pn;
    std::map<std::string, Rational> par{{"p", p}};
    PlanarSystem sys = family_two(p);
    EXPECT_EQ(invariant_line_check(sys, parse_poly("y")), parse_poly("1 + p*y^2", par));
    EXPECT_EQ(invariant_line_check(sys, parse_poly("x - y")), parse_poly("1 - x*y - y^2 + p*y^2", par));
    EXPECT_EQ(invariant_line_check(sys, parse_poly("x + y")), parse_poly("1 - x*y + y^2 + p*y^2", par));
  }
  EXPECT_FALSE(invariant_line_check(family_two(1), parse_poly("x")).has_value());
  EXPECT_THROW(invariant_line_check(family_two(1), parse_poly("x^2")), Error);
}

TEST(InvariantLines, Restriction) {
  Rational p = 3;
  PlanarSystem sys = family_two(p);
  UPoly xpx3({0, 1, 0, p});
  auto [a, b] = restrict_to_line(sys, LineSpec::slope(1));
  EXPECT_EQ(a, xpx3);
  EXPECT_EQ(b, xpx3);
  auto [c, d] = restrict_to_line(sys, LineSpec::horizontal(0));
  EXPECT_EQ(c, UPoly::x());
  EXPECT_TRUE(d.is_zero());
  auto [e, f] = restrict_to_line(sys, LineSpec::slope(-1));
  EXPECT_EQ(e, xpx3);
  EXPECT_EQ(f, -xpx3);
  EXPECT_THROW(restrict_to_line(sys, LineSpec::slope(2)), NotInvariant);
}

TEST(FiniteEquilibria, NegativeP) {
  auto eq = finite_equilibria(family_two(-1));
  ASSERT_EQ(eq.size(), 5u);
  int nodes = 0, saddles = 0;
  for (const auto &e : eq) {
    Rational x = e.point.x_number().rational_value(), y = e.point.y_number().rational_value();
    std::string k = e.kind.to_string();
    if (x == 0 && y == 0) {
      EXPECT_EQ(k, "hyperbolic-node(unstable)");
      EXPECT_TRUE(e.kind.star);
    } else if (x == y) {
      EXPECT_EQ(k, "hyperbolic-node(stable)");
      ++nodes;
    } else {
      EXPECT_EQ(x, -y);
      EXPECT_EQ(k, "hyperbolic-saddle");
      ++saddles;
    }
  }
  EXPECT_EQ(nodes, 2);
  EXPECT_EQ(saddles, 2);
}

TEST(FiniteEquilibria, NonNegativePOnlyOrigin) {
  for (Rational p : {Rational(0), Rational(1), rational(1, 3)}) {
    auto eq = finite_equilibria(family_two(p));
    ASSERT_EQ(eq.size(), 1u);
    EXPECT_EQ(eq[0].point.x_number().rational_value(), 0);
  }
}

TEST(FiniteEquilibria, IrrationalNodes) {
  // p = -2: equilibria (+-1/sqrt2, +-1/sqrt2).
  auto eq = finite_equilibria(family_two(-2));
  ASSERT_EQ(eq.size(), 5u);
  for (const auto &e : eq) {
    auto [x, y] = e.point.approx();
    if (x == 0) continue;
    EXPECT_NEAR(std::abs(x), 1 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(std::abs(y), 1 / std::sqrt(2.0), 1e-14);
    EXPECT_EQ(e.kind.to_string(), x * y > 0 ? "hyperbolic-node(stable)" : "hyperbolic-saddle");
  }
}

TEST(FiniteEquilibria, LieOnInvariantLines) {
  for (long pn : {-3, -1, 0, 2}) {
    PlanarSystem sys = family_two(pn);
    std::vector<RationalPoly> lines;
    for (const char *l : {"y", "x - y", "x + y"})
      if (invariant_line_check(sys, parse_poly(l))) lines.push_back(parse_poly(l));
    for (const auto &e : finite_equilibria(sys)) {
      bool on = false;
      for (const auto &l : lines) on = on || e.point.vanishes(l);
      EXPECT_TRUE(on) << e.point.to_string();
    }
  }
}

TEST(Classify, LinearExamples) {
  EXPECT_EQ(classify_linear(ExactMatrix::rational(-2, 0, 0, -1)).to_string(), "hyperbolic-node(stable)");
  EXPECT_EQ(classify_linear(ExactMatrix::rational(2, 0, 0, 1)).to_string(), "hyperbolic-node(unstable)");
  EXPECT_EQ(classify_linear(ExactMatrix::rational(0, 0, 0, 0)).to_string(), "linearly-zero");
  EXPECT_EQ(classify_linear(ExactMatrix::rational(1, 0, 0, -1)).to_string(), "hyperbolic-saddle");
  EXPECT_EQ(classify_linear(ExactMatrix::rational(-1, 2, -2, -1)).to_string(), "hyperbolic-focus(stable)");
  ClassificationTag c = classify_linear(ExactMatrix::rational(0, 1, -1, 0));
  EXPECT_EQ(c.to_string(), "linear-center");
  EXPECT_TRUE(c.caveat);
  EXPECT_EQ(classify_linear(ExactMatrix::rational(0, 1, 0, 0)).to_string(), "nilpotent");
  EXPECT_EQ(classify_linear(ExactMatrix::rational(-2, 0, 0, 0)).category, Category::SemiHyperbolic);
}

TEST(Classify, SimilarityInvariance) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<std::array<long, 4>> mats{{-2, 0, 0, -1}, {1, 0, 0, -1}, {-1, 2, -2, -1}, {0, 1, -1, 0}, {-2, 0, 0, 0}, {0, 1, 0, 0}, {3, 1, 0, 3}};
  for (const auto &m : mats)
    for (int trial = 0; trial < 10; ++trial) {
      Rational s00 = d(rng), s01 = d(rng), s10 = d(rng), s11 = d(rng);
      Rational det = s00 * s11 - s01 * s10;
      if (det == 0) continue;
      // S^{-1} J S
      Rational i00 = s11 / det, i01 = -s01 / det, i10 = -s10 / det, i11 = s00 / det;
      Rational a00 = m[0] * s00 + m[1] * s10, a01 = m[0] * s01 + m[1] * s11;
      Rational a10 = m[2] * s00 + m[3] * s10, a11 = m[2] * s01 + m[3] * s11;
      ExactMatrix sim = ExactMatrix::rational(i00 * a00 + i01 * a10, i00 * a01 + i01 * a11, i10 * a00 + i11 * a10, i10 * a01 + i11 * a11);
      EXPECT_EQ(classify_linear(sim).to_string(), classify_linear(ExactMatrix::rational(m[0], m[1], m[2], m[3])).to_string());
    }
}

TEST(Classify, SemiHyperbolicChartPoints) {
  PlanarSystem uz = chart_x(family_two(0));
  ClassificationTag o1 = classify_semihyperbolic(uz, AlgebraicPoint(1, 0));
  EXPECT_EQ(o1.to_string(), "semi-hyperbolic(node,stable)");
  EXPECT_EQ(o1.multiplicity, 3);
  EXPECT_EQ(o1.leading_coeff, -1);
  EXPECT_EQ(o1.lambda_sign, -1);
  ClassificationTag o2 = classify_semihyperbolic(uz, AlgebraicPoint(-1, 0));
  EXPECT_EQ(o2.to_string(), "semi-hyperbolic(saddle)");
  EXPECT_EQ(o2.multiplicity, 3);
  EXPECT_EQ(o2.leading_coeff, -1);
  PlanarSystem vz = chart_y(family_two(0));
  EXPECT_EQ(classify_semihyperbolic(vz, AlgebraicPoint(1, 0)).to_string(), "semi-hyperbolic(node,stable)");
  EXPECT_EQ(classify_semihyperbolic(vz, AlgebraicPoint(-1, 0)).to_string(), "semi-hyperbolic(saddle)");
}

TEST(Classify, SaddleNode) {
  PlanarSystem sys(parse_poly("-x"), parse_poly("y^2"));
  ClassificationTag t = classify_semihyperbolic(sys, AlgebraicPoint(0, 0));
  EXPECT_EQ(t.to_string(), "semi-hyperbolic(saddle-node)");
  EXPECT_EQ(t.multiplicity, 2);
}

TEST(Classify, CenterManifoldCurvesAndOrder) {
  // x' = -x + y^2, y' = x y: center manifold x = y^2 + ..., reduced y' = y^3.
  PlanarSystem sys(parse_poly("-x + y^2"), parse_poly("x*y"));
  ClassificationTag t = classify_semihyperbolic(sys, AlgebraicPoint(0, 0));
  EXPECT_EQ(t.multiplicity, 3);
  EXPECT_EQ(t.leading_coeff, 1);
  EXPECT_EQ(t.to_string(), "semi-hyperbolic(saddle)");
  // Perturbing the zero eigenvalue to +-eps in the y-direction matches.
  EXPECT_EQ(classify_linear(ExactMatrix::rational(-1, 0, 0, rational(1, 1000))).to_string(), "hyperbolic-saddle");
  // x' = -x, y' = y^5 needs order 5.
  PlanarSystem deep(parse_poly("-x"), parse_poly("y^5"));
  EXPECT_THROW(classify_semihyperbolic(deep, AlgebraicPoint(0, 0), 4), UndeterminedAtOrder);
  EXPECT_EQ(classify_semihyperbolic(deep, AlgebraicPoint(0, 0), 6).multiplicity, 5);
}

TEST(Classify, PerturbationConsistencyForStableNode) {
  // O1 at p = 0 (lambda = -2, a3 = -1): perturbing -p to -eps gives a stable node.
  EXPECT_EQ(classify_linear(ExactMatrix::rational(-2, 0, 0, rational(-1, 1000))).to_string(), "hyperbolic-node(stable)");
  // O2 (lambda = 2, a3 = -1): saddle.
  EXPECT_EQ(classify_linear(ExactMatrix::rational(2, 0, 0, rational(-1, 1000))).to_string(), "hyperbolic-saddle");
}
