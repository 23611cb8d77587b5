#pragma once

// Poincare compactification of systems x' = x + P3, y' = y + Q3 (P3, Q3
// homogeneous cubics) into the charts (u, z) = (y/x, 1/x) and
// (v, z) = (x/y, 1/y), with the equator equilibrium inventory.

#include <algorithm>
#include <vector>

#include "dtk/classify.hpp"
#include "dtk/equilibria.hpp"

namespace dtk {

struct ShapeError : Error {
  using Error::Error;
};

/// Checks x' = x + P3, y' = y + Q3 and returns (P3, Q3).
inline std::pair<RationalPoly, RationalPoly> darboux_cubic_parts(const PlanarSystem &sys) {
  RationalPoly x = RationalPoly::var(0, sys.vars), y = RationalPoly::var(1, sys.vars);
  RationalPoly p3 = sys.p - x, q3 = sys.q - y;
  for (const auto *f : {&p3, &q3})
    for (const auto &[m, c] : f->terms())
      if (m.degree() != 3)
        throw ShapeError("expected x' = x + P3, y' = y + Q3 with homogeneous cubics P3, Q3; got " + sys.to_string());
  return {p3, q3};
}

namespace detail {

/// z^d F(1/z, a/z) for the chart of the first axis (first = true) or
/// z^d F(a/z, 1/z) for the second; a polynomial in (a, z) when deg F <= d.
inline RationalPoly homogenize_chart(const RationalPoly &f, bool first, int d, const VarNames &vars) {
  RationalPoly out(vars);
  for (const auto &[m, c] : f.terms()) {
    if (m.degree() > d) throw Error("homogenize_chart: degree bound exceeded");
    int apow = first ? m.j : m.i;
    out.add_term(c, apow, d - m.degree());
  }
  return out;
}

/// The chart field (with the z^2 multiplier folded in) computed from the
/// parent components; shared by the chart constructors and lineage replay.
inline std::pair<RationalPoly, RationalPoly> chart_components(const RationalPoly &p, const RationalPoly &q, bool first,
                                                             const VarNames &vars) {
  RationalPoly a = RationalPoly::var(0, vars), z = RationalPoly::var(1, vars);
  RationalPoly ph = homogenize_chart(p, first, 3, vars), qh = homogenize_chart(q, first, 3, vars);
  if (first) return {qh - a * ph, -(z * ph)};
  return {ph - a * qh, -(z * qh)};
}

inline PlanarSystem make_chart(const PlanarSystem &sys, bool first) {
  darboux_cubic_parts(sys);
  VarNames vars = first ? VarNames{"u", "z"} : VarNames{"v", "z"};
  auto [a, b] = chart_components(sys.p, sys.q, first, vars);
  PlanarSystem out(a, b, vars);
  out.lineage = sys.lineage;
  Transform t;
  t.kind = first ? TransformKind::ChartX : TransformKind::ChartY;
  t.description = first ? "chart-x: u = y/x, z = 1/x, field multiplied by z^2" : "chart-y: v = x/y, z = 1/y, field multiplied by z^2";
  t.parent_p = sys.p;
  t.parent_q = sys.q;
  t.parent_vars = sys.vars;
  t.factor = RationalPoly::term(1, 0, 2, vars);
  out.lineage.push_back(std::move(t));
  return out;
}

}  // namespace detail

/// u' = Q3(1,u) - u P3(1,u),  z' = -z (z^2 + P3(1,u)).
inline PlanarSystem chart_x(const PlanarSystem &sys) { return detail::make_chart(sys, true); }

/// v' = P3(v,1) - v Q3(v,1),  z' = -z (z^2 + Q3(v,1)).
inline PlanarSystem chart_y(const PlanarSystem &sys) { return detail::make_chart(sys, false); }

/// Roots of the chart field on z = 0 with the kept range: chart-x keeps
/// |u| <= 1, chart-y keeps |v| < 1 (the rest is the other chart's).
inline std::vector<Equilibrium> equator_equilibria(const PlanarSystem &sys, int order = 6) {
  std::vector<Equilibrium> out;
  for (bool first : {true, false}) {
    PlanarSystem chart = detail::make_chart(sys, first);
    UPoly onequator = chart.p.partial_eval(1, 0).to_upoly(0);
    if (onequator.is_zero()) throw PositiveDimensional("the whole equator consists of equilibria");
    for (const auto &r : real_roots(onequator)) {
      int lo = compare(r, AlgebraicNumber(Rational(-1))), hi = compare(r, AlgebraicNumber(Rational(1)));
      bool keep = first ? (lo >= 0 && hi <= 0) : (lo > 0 && hi < 0);
      if (!keep) continue;
      AlgebraicPoint pt = r.is_rational() ? AlgebraicPoint(r.rational_value(), 0) : AlgebraicPoint(NumberField(r), UPoly::x(), UPoly());
      out.push_back(make_equilibrium(chart, std::move(pt), first ? "chart-x" : "chart-y", order));
    }
  }
  return out;
}

}  // namespace dtk
