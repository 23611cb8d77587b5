#include <gtest/gtest.h>

#include <cmath>

#include "dtk/blowup.hpp"
#include "dtk/compactify.hpp"

using namespace dtk;

namespace {

const VarNames UW{"u", "w"};
const VarNames UZ{"u", "z"};

std::map<std::string, Rational> P(const Rational &p) { return {{"p", p}}; }

// Oracle at u = sigma a^2 (a > 0 rational, so sqrt|u| = a exactly):
// w' = (z' - w sigma u' / (2a)) / a evaluated with z = w a.
void expect_blowup_matches(const PlanarSystem &uz, const BlowupChart &c, int sigma) {
  for (int an = 1; an <= 4; ++an)
    for (int wn = -3; wn <= 3; ++wn) {
      Rational a = rational(an, 3), w = rational(wn, 2), u = a * a * sigma, z = w * a;
      Rational ud = uz.p(u, z), zd = uz.q(u, z);
      EXPECT_EQ(c.sys.p(u, w), ud);
      EXPECT_EQ(c.sys.q(u, w), (zd - w * sigma * ud / (2 * a)) / a);
    }
}

}  // namespace

TEST(Blowup, PositiveBranch) {
  for (long pn : {-2, -1, 0, 1, 2}) {
    Rational p = pn;
    PlanarSystem uz = chart_x(family_two(p));
    BlowupChart c = half_power_blowup(uz, Branch::Positive);
    EXPECT_EQ(c.sys.p, parse_poly("u^2*(1 - u^2)", {}, UW));
    EXPECT_EQ(c.sys.q, parse_poly("1/2*u*w - u*w^3 - p*u^2*w - 1/2*u^3*w", P(p), UW));
    expect_blowup_matches(uz, c, 1);
  }
}

TEST(Blowup, NegativeBranch) {
  for (long pn : {-1, 0, 3}) {
    Rational p = pn;
    PlanarSystem uz = chart_x(family_two(p));
    BlowupChart c = half_power_blowup(uz, Branch::Negative);
    EXPECT_EQ(c.sys.q, parse_poly("1/2*u*w + u*w^3 - p*u^2*w - 1/2*u^3*w", P(p), UW));
    expect_blowup_matches(uz, c, -1);
  }
}

TEST(Blowup, SimpleDegenerate) {
  PlanarSystem uz(parse_poly("u^2", {}, UZ), parse_poly("-z^3", {}, UZ), UZ);
  BlowupChart c = half_power_blowup(uz, Branch::Positive);
  EXPECT_EQ(c.sys.q, parse_poly("-u*w^3 - 1/2*u*w", {}, UW));
  expect_blowup_matches(uz, c, 1);
  EXPECT_EQ(blow_down(c), uz);
}

TEST(Blowup, ResidueAndPreconditions) {
  // z' = u gives w' = u^(1/2) - ...: odd power survives.
  PlanarSystem uz(parse_poly("u^2", {}, UZ), parse_poly("u^2 + z^3", {}, UZ), UZ);
  EXPECT_THROW(half_power_blowup(uz, Branch::Positive), HalfPowerResidue);
  PlanarSystem linear(parse_poly("u", {}, UZ), parse_poly("z", {}, UZ), UZ);
  EXPECT_THROW(half_power_blowup(linear, Branch::Positive), Error);
}

TEST(Rescale, DividesByU) {
  for (long pn : {-1, 0, 2}) {
    Rational p = pn;
    PlanarSystem uz = chart_x(family_two(p));
    BlowupChart pos = rescale_time(half_power_blowup(uz, Branch::Positive), RationalPoly::term(1, 1, 0, UW));
    BlowupChart neg = rescale_time(half_power_blowup(uz, Branch::Negative), RationalPoly::term(1, 1, 0, UW));
    EXPECT_EQ(pos.sys.p, parse_poly("u*(1 - u^2)", {}, UW));
    EXPECT_EQ(pos.sys.q, parse_poly("1/2*w - w^3 - p*u*w - 1/2*u^2*w", P(p), UW));
    EXPECT_EQ(neg.sys.q, parse_poly("1/2*w + w^3 - p*u*w - 1/2*u^2*w", P(p), UW));
    EXPECT_EQ(pos.time_sign(), 1);
    EXPECT_EQ(neg.time_sign(), -1);
    EXPECT_EQ(neg.orientation_reversed_on, "u<0");
    EXPECT_EQ(neg.sys.lineage.back().kind, TransformKind::TimeRescale);
    // Round trip back to the chart on both branches.
    EXPECT_EQ(blow_down(pos), uz);
    EXPECT_EQ(blow_down(neg), uz);
    // The divisor is invariant.
    EXPECT_TRUE(pos.sys.p.partial_eval(0, 0).is_zero());
    EXPECT_TRUE(neg.sys.p.partial_eval(0, 0).is_zero());
  }
}

TEST(Rescale, NotDivisible) {
  BlowupChart c;
  c.sys = PlanarSystem(parse_poly("u", {}, UW), parse_poly("w", {}, UW), UW);
  c.rescale_factor = RationalPoly(Rational(1), UW);
  EXPECT_THROW(rescale_time(c, RationalPoly::term(1, 1, 0, UW)), NotDivisible);
}

TEST(Divisor, PositiveBranchPoints) {
  for (long pn : {-2, 0, 1, 3}) {
    Rational p = pn;
    auto pts = divisor_equilibria(blowup_and_rescale(chart_x(family_two(p)), Branch::Positive));
    ASSERT_EQ(pts.size(), 3u);
    // Middle point (0, 0): diag(1, 1/2), unstable node.
    EXPECT_EQ(pts[1].point.y_number().rational_value(), 0);
    EXPECT_EQ(*pts[1].jacobian.rational_entry(0, 0), 1);
    EXPECT_EQ(*pts[1].jacobian.rational_entry(1, 1), rational(1, 2));
    EXPECT_EQ(pts[1].kind.to_string(), "hyperbolic-node(unstable)");
    for (std::size_t i : {0u, 2u}) {
      const auto &e = pts[i];
      const NumberField &f = e.jacobian.field;
      // w^2 = 1/2.
      EXPECT_EQ(f.as_rational(f.mul(e.point.y(), e.point.y())), rational(1, 2));
      EXPECT_EQ(f.as_rational(e.jacobian.a[0][0]), 1);
      EXPECT_EQ(f.as_rational(e.jacobian.a[0][1]), 0);
      EXPECT_EQ(f.as_rational(e.jacobian.a[1][1]), -1);
      // Lower-left entry -p w: its square is p^2/2, its sign opposite to p w.
      UPoly j10 = e.jacobian.a[1][0];
      EXPECT_EQ(f.as_rational(f.mul(j10, j10)), p * p / 2);
      int wsign = f.sign(e.point.y());
      EXPECT_EQ(f.sign(j10), -sgn(p) * wsign);
      EXPECT_EQ(e.kind.to_string(), "hyperbolic-saddle");
    }
    // Saddle eigenvectors at p = 0 are the coordinate axes.
    if (p == 0) EXPECT_TRUE(pts[0].jacobian.field.is_zero(pts[0].jacobian.a[1][0]));
  }
}

TEST(Divisor, NegativeBranchSingleStableNode) {
  for (long pn : {-1, 0, 1}) {
    auto pts = divisor_equilibria(blowup_and_rescale(chart_x(family_two(pn)), Branch::Negative));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].kind.to_string(), "hyperbolic-node(stable)");
    EXPECT_EQ(*pts[0].jacobian.rational_entry(0, 0), 1);
  }
}

TEST(DirectionalZ, FamilyTwoEnd) {
  PlanarSystem zc = directional_z_chart(chart_x(family_two(1)), 1);
  const VarNames UR{"ubar", "r"};
  EXPECT_EQ(zc.p.partial_eval(1, 0), parse_poly("2*ubar - ubar^2", {}, UR));
  EXPECT_EQ(zc.q.partial_eval(1, 0), RationalPoly(UR));
  EXPECT_EQ(zc.lineage.back().kind, TransformKind::DirectionalZ);
}

TEST(Sectors, TwoNodalTwoSaddle) {
  for (Rational p : {Rational(-2), Rational(-1), rational(-1, 2), Rational(0), rational(1, 2), Rational(1), Rational(2)}) {
    SectorStructure s = assemble_sectors(chart_x(family_two(p)));
    EXPECT_EQ(s.nodal, 2) << p;
    EXPECT_EQ(s.saddle, 2) << p;
    EXPECT_EQ(s.elliptic, 0) << p;
    EXPECT_FALSE(s.degenerate);
    EXPECT_EQ(s.sectors.size(), 4u);
    EXPECT_EQ(s.cycle.size(), 6u);
  }
}

TEST(Sectors, SeparatrixAsymptotics) {
  SectorStructure s = assemble_sectors(chart_x(family_two(1)));
  std::vector<std::string> curves;
  for (const auto &d : s.cycle) curves.push_back(d.asymptotic);
  EXPECT_NE(std::find(curves.begin(), curves.end(), "z^2 = 1/2*u, z > 0"), curves.end());
  EXPECT_NE(std::find(curves.begin(), curves.end(), "z^2 = 1/2*u, z < 0"), curves.end());
  // Saddle sectors are bounded by these parabolas and the z-axis ends.
  for (const auto &sec : s.sectors)
    if (sec.type == SectorType::Hyperbolic) EXPECT_TRUE(sec.from.find("end") != std::string::npos || sec.to.find("end") != std::string::npos);
}

TEST(Sectors, PureStarDegenerate) {
  SectorStructure s = assemble_sectors(chart_x(PlanarSystem(parse_poly("x"), parse_poly("y"))));
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.nodal, 2);
  EXPECT_EQ(s.saddle, 0);
}

TEST(Sectors, NonHyperbolicDivisorReported) {
  // u' = u^2, z' = u z/2 - z^3: on u>0 the rescaled w' = -w^3 has a
  // degenerate zero at w = 0.
  PlanarSystem uz(parse_poly("u^2", {}, UZ), parse_poly("1/2*u*z - z^3", {}, UZ), UZ);
  EXPECT_THROW(assemble_sectors(uz), NonHyperbolicDivisor);
}
