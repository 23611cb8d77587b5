#pragma once

// Weighted blow-up z = w |u|^(1/2) of a linearly-zero point at the origin of
// a (u, z) chart, time rescaling by powers of u, the equilibria on the
// divisor {u = 0}, and the sector structure obtained by gluing the two
// branches with the two ends of the divisor (the z-axis directions).

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dtk/classify.hpp"
#include "dtk/equilibria.hpp"

namespace dtk {

struct HalfPowerResidue : Error {
  using Error::Error;
};
struct NonHyperbolicDivisor : Error {
  using Error::Error;
};

struct BlowupChart {
  Branch branch = Branch::Positive;
  PlanarSystem sys;
  /// Accumulated divisor of the time rescale (1 before rescaling).
  RationalPoly rescale_factor;
  /// Region where the rescaled time runs against the original ("" if none).
  std::string orientation_reversed_on;

  /// +1 when rescaled time agrees with the original time on this branch.
  int time_sign() const { return orientation_reversed_on.empty() ? 1 : -1; }
};

namespace detail {

inline void require_linearly_zero(const PlanarSystem &sys) {
  for (const auto *f : {&sys.p, &sys.q})
    if (f->order() >= 0 && f->order() < 2) throw Error("blow-up expects an equilibrium at the origin with zero linear part");
}

}  // namespace detail

/// w = z / |u|^(1/2):  w' = z'/t - w sigma u' / (2 t^2), t = |u|^(1/2), u = sigma t^2.
inline BlowupChart half_power_blowup(const PlanarSystem &sys, Branch branch) {
  detail::require_linearly_zero(sys);
  const VarNames vars{"u", "w"};
  HalfPowerPoly ut = substitute_halfpower(sys.p, branch, 1, vars), zt = substitute_halfpower(sys.q, branch, 1, vars);
  HalfPowerPoly wt = zt.shifted(-1) + ut.shifted(-2, 1) * Rational(Rational(-branch_sign(branch)) / 2);
  auto up = ut.to_rational_poly(), wp = wt.to_rational_poly();
  if (!up || !wp)
    throw HalfPowerResidue("half-integer powers of u survive the substitution: w' = " + wt.to_string());
  BlowupChart chart;
  chart.branch = branch;
  chart.sys = PlanarSystem(*up, *wp, vars);
  chart.sys.lineage = sys.lineage;
  Transform t;
  t.kind = TransformKind::Blowup;
  t.description = std::string("blow-up w = z/|u|^(1/2) on ") + branch_name(branch);
  t.parent_p = sys.p;
  t.parent_q = sys.q;
  t.parent_vars = sys.vars;
  t.branch = branch;
  chart.sys.lineage.push_back(std::move(t));
  chart.rescale_factor = RationalPoly(Rational(1), vars);
  return chart;
}

/// Divide the chart field by c*u^k (new time d tau = c u^k dt).
inline BlowupChart rescale_time(const BlowupChart &chart, const RationalPoly &factor) {
  if (factor.terms().size() != 1 || factor.terms().begin()->first.j != 0)
    throw Error("time rescale factor must be a monomial in u");
  const auto &[mono, c] = *factor.terms().begin();
  RationalPoly f = factor.with_vars(chart.sys.vars);
  BlowupChart out = chart;
  out.sys = PlanarSystem(divide_exact(chart.sys.p, f), divide_exact(chart.sys.q, f), chart.sys.vars);
  out.sys.lineage = chart.sys.lineage;
  out.rescale_factor = chart.rescale_factor * f;
  int sign = sgn(c) * ((chart.branch == Branch::Negative && mono.i % 2 != 0) ? -1 : 1);
  bool reversed = (chart.time_sign() * sign) < 0;
  out.orientation_reversed_on = reversed ? branch_name(chart.branch) : "";
  Transform t;
  t.kind = TransformKind::TimeRescale;
  t.description = "d tau = " + f.to_string() + " dt";
  t.parent_p = chart.sys.p;
  t.parent_q = chart.sys.q;
  t.parent_vars = chart.sys.vars;
  t.branch = chart.branch;
  t.factor = f;
  t.reversed_on = sign < 0 ? branch_name(chart.branch) : "";
  out.sys.lineage.push_back(std::move(t));
  return out;
}

/// Largest power of u dividing both components.
inline int u_multiplicity(const PlanarSystem &sys) {
  int k = -1;
  for (const auto *f : {&sys.p, &sys.q})
    for (const auto &[m, c] : f->terms()) k = k < 0 ? m.i : std::min(k, m.i);
  return std::max(k, 0);
}

/// Blow-up followed by division by the largest common power of u.
inline BlowupChart blowup_and_rescale(const PlanarSystem &sys, Branch branch) {
  BlowupChart c = half_power_blowup(sys, branch);
  int k = u_multiplicity(c.sys);
  if (k == 0) return c;
  return rescale_time(c, RationalPoly::term(1, k, 0, c.sys.vars));
}

/// Undo rescale and blow-up: z = w |u|^(1/2), field multiplied back by the
/// rescale factor.
inline PlanarSystem blow_down(const BlowupChart &chart) {
  const VarNames vars{"u", "z"};
  RationalPoly uf = chart.sys.p * chart.rescale_factor, wf = chart.sys.q * chart.rescale_factor;
  HalfPowerPoly ut = substitute_halfpower(uf, chart.branch, -1, vars), wt = substitute_halfpower(wf, chart.branch, -1, vars);
  HalfPowerPoly zt = wt.shifted(1) + ut.shifted(-2, 1) * Rational(Rational(branch_sign(chart.branch)) / 2);
  auto up = ut.to_rational_poly(), zp = zt.to_rational_poly();
  if (!up || !zp) throw HalfPowerResidue("blow-down leaves half-integer powers of u: z' = " + zt.to_string());
  return PlanarSystem(*up, *zp, vars);
}

/// Equilibria on {u = 0}. Classification is in the original time direction:
/// where the rescale reversed time the linearization is negated first. The
/// stored Jacobian is that of the rescaled chart.
inline std::vector<Equilibrium> divisor_equilibria(const BlowupChart &chart) {
  const PlanarSystem &s = chart.sys;
  if (u_multiplicity(s) > 0) throw Error("chart still carries a common factor u; rescale time first");
  UPoly up = s.p.partial_eval(0, 0).to_upoly(1), wp = s.q.partial_eval(0, 0).to_upoly(1);
  UPoly g = up.is_zero() ? wp : (wp.is_zero() ? up : gcd(up, wp));
  if (g.is_zero()) throw PositiveDimensional("the divisor consists of equilibria");
  std::vector<Equilibrium> out;
  std::string ctx = std::string("divisor ") + branch_name(chart.branch) + (chart.time_sign() < 0 ? " (time reversed by rescale)" : "");
  for (const auto &r : real_roots(g)) {
    AlgebraicPoint pt = r.is_rational() ? AlgebraicPoint(0, r.rational_value()) : AlgebraicPoint(NumberField(r), UPoly(), UPoly::x());
    ExactMatrix j = jacobian_at(s, pt);
    ClassificationTag tag = classify_linear(chart.time_sign() < 0 ? j.negated() : j);
    out.push_back({std::move(pt), std::move(j), std::move(tag), ctx});
  }
  return out;
}

/// Chart along the z-axis directions: u = ubar r^2, z = s r (s = +-1), field
/// multiplied by r^2 and divided by the largest common power of r.
inline PlanarSystem directional_z_chart(const PlanarSystem &sys, int s) {
  const VarNames vars{"ubar", "r"};
  RationalPoly ub = RationalPoly::var(0, vars), r = RationalPoly::var(1, vars);
  RationalPoly usub = ub * r * r, zsub = r * Rational(s);
  RationalPoly a = sys.p.substitute(usub, zsub).with_vars(vars), b = (sys.q.substitute(usub, zsub) * Rational(s)).with_vars(vars);
  // r^2 ubar' = A - 2 ubar r B,  r^2 r' = r^2 B
  RationalPoly pu = a - ub * r * b * Rational(2), pr = r * r * b;
  int k = -1;
  for (const auto *f : {&pu, &pr})
    for (const auto &[m, c] : f->terms()) k = k < 0 ? m.j : std::min(k, m.j);
  k = std::max(k, 0);
  RationalPoly rk = RationalPoly::term(1, 0, k, vars);
  PlanarSystem out(divide_exact(pu, rk), divide_exact(pr, rk), vars);
  out.lineage = sys.lineage;
  Transform t;
  t.kind = TransformKind::DirectionalZ;
  t.description = "u = ubar*r^2, z = " + std::string(s > 0 ? "" : "-") + "r; field multiplied by r^2 and divided by r^" + std::to_string(k);
  t.parent_p = sys.p;
  t.parent_q = sys.q;
  t.parent_vars = sys.vars;
  t.factor = rk;
  t.direction_sign = s;
  out.lineage.push_back(std::move(t));
  return out;
}

enum class SectorType { Parabolic, Hyperbolic, Elliptic };

inline const char *sector_name(SectorType t) {
  switch (t) {
    case SectorType::Parabolic: return "nodal";
    case SectorType::Hyperbolic: return "saddle";
    case SectorType::Elliptic: return "elliptic";
  }
  return "unknown";
}

/// A hyperbolic equilibrium on the divisor as seen in original time.
struct DivisorPoint {
  std::string label;
  std::string chart;
  std::string coordinate;
  double coordinate_approx = 0;
  std::string tag;
  /// Eigenvalue signs along the divisor and transverse to it, original time,
  /// transverse sign measured pointing away from the divisor.
  int along = 0;
  int transverse = 0;
  /// Leading-order curve of its transverse orbit in (u, z).
  std::string asymptotic;
  /// Tangent direction of that orbit at the origin of (u, z), radians.
  double tangent_angle = 0;
};

struct Sector {
  SectorType type;
  std::string from, to;
};

struct SectorStructure {
  int nodal = 0, saddle = 0, elliptic = 0;
  bool degenerate = false;
  std::string note;
  std::vector<DivisorPoint> cycle;
  std::vector<Sector> sectors;
};

namespace detail {

inline double angle_for(double w, Branch b) {
  if (w > 0) return std::numbers::pi / 2;
  if (w < 0) return -std::numbers::pi / 2;
  return b == Branch::Positive ? 0.0 : std::numbers::pi;
}

inline DivisorPoint chart_point(const BlowupChart &chart, const Equilibrium &e) {
  const NumberField &f = e.jacobian.field;
  int ts = chart.time_sign();
  int lu = f.sign(e.jacobian.a[0][0]), lw = f.sign(e.jacobian.a[1][1]);
  if (lu == 0 || lw == 0)
    throw NonHyperbolicDivisor("divisor equilibrium " + e.point.to_string() + " on " + branch_name(chart.branch) +
                               " is not hyperbolic; a further blow-up is needed");
  DivisorPoint d;
  const AlgebraicNumber &w = e.point.y_number();
  d.chart = branch_name(chart.branch);
  d.coordinate = w.to_string();
  d.coordinate_approx = w.approx();
  d.label = d.chart + " w=" + d.coordinate;
  d.tag = e.kind.to_string();
  d.along = ts * lw;
  // u' = lambda u moves away from u = 0 on either side when lambda > 0.
  d.transverse = ts * lu;
  d.tangent_angle = angle_for(d.coordinate_approx, chart.branch);
  int ws = w.sign_of(UPoly::x());
  if (ws == 0) {
    d.asymptotic = "z = o(|u|^(1/2))";
  } else {
    // z^2 = sigma w^2 u with z of the sign of w.
    UPoly sq = f.mul(e.point.y(), e.point.y()) * UPoly(Rational(branch_sign(chart.branch)));
    AlgebraicNumber c = f.to_algebraic(sq);
    d.asymptotic = "z^2 = " + c.to_string() + "*u, z " + (ws > 0 ? "> 0" : "< 0");
  }
  return d;
}

inline std::optional<DivisorPoint> end_point(const PlanarSystem &original, int s) {
  PlanarSystem zc = directional_z_chart(original, s);
  if (zc.p.coeff(0, 0) != 0 || zc.q.coeff(0, 0) != 0) return std::nullopt;
  AlgebraicPoint origin(0, 0);
  ExactMatrix j = jacobian_at(zc, origin);
  Rational la = *j.rational_entry(0, 0), lt = *j.rational_entry(1, 1);
  if (*j.rational_entry(0, 1) != 0 && *j.rational_entry(1, 0) != 0)
    throw NonHyperbolicDivisor("z-direction end is not a triangular equilibrium");
  if (la == 0 || lt == 0)
    throw NonHyperbolicDivisor(std::string("z-direction end z") + (s > 0 ? ">0" : "<0") + " is not hyperbolic");
  DivisorPoint d;
  d.chart = s > 0 ? "z>0 end" : "z<0 end";
  d.coordinate = "0";
  d.label = d.chart;
  d.tag = classify_linear(j).to_string();
  d.along = sgn(la);
  d.transverse = sgn(lt);
  d.asymptotic = std::string("u = o(z^2), z ") + (s > 0 ? "> 0" : "< 0");
  d.tangent_angle = s > 0 ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  return d;
}

}  // namespace detail

/// Sector structure of the linearly-zero origin of `original` (a (u, z)
/// chart) from the rescaled branch charts. Walks the divisor cyclically:
/// z>0 end, u>0 branch with w decreasing, z<0 end, u<0 branch with w
/// increasing. Each arc between consecutive divisor equilibria gives one
/// sector; runs of parabolic arcs merge into a single nodal sector.
inline SectorStructure assemble_sectors(const BlowupChart &pos, const BlowupChart &neg, const PlanarSystem &original) {
  SectorStructure out;
  if (original.p.is_zero()) {
    out.nodal = 2;
    out.degenerate = true;
    out.note = "u' vanishes identically: every direction is characteristic and no separatrix crosses the divisor";
    return out;
  }
  if (pos.branch != Branch::Positive || neg.branch != Branch::Negative) throw Error("assemble_sectors expects the u>0 and u<0 charts");

  auto pos_pts = divisor_equilibria(pos), neg_pts = divisor_equilibria(neg);
  if (auto e = detail::end_point(original, 1)) out.cycle.push_back(*e);
  for (auto it = pos_pts.rbegin(); it != pos_pts.rend(); ++it) out.cycle.push_back(detail::chart_point(pos, *it));
  if (auto e = detail::end_point(original, -1)) out.cycle.push_back(*e);
  for (const auto &e : neg_pts) out.cycle.push_back(detail::chart_point(neg, e));

  const std::size_t n = out.cycle.size();
  if (n < 2) {
    out.degenerate = true;
    out.note = "fewer than two equilibria on the divisor";
    return out;
  }
  std::vector<SectorType> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    const DivisorPoint &a = out.cycle[i], &b = out.cycle[(i + 1) % n];
    if (a.along == b.along) throw Error("divisor flow inconsistent between " + a.label + " and " + b.label);
    const DivisorPoint &src = a.along > 0 ? a : b, &dst = a.along > 0 ? b : a;
    bool leaves = src.transverse > 0, enters = dst.transverse < 0;
    arcs.push_back(leaves && enters ? SectorType::Elliptic : (!leaves && !enters ? SectorType::Hyperbolic : SectorType::Parabolic));
  }
  // Start at an arc that does not continue a parabolic run.
  std::size_t start = 0;
  bool all_parabolic = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (arcs[i] != SectorType::Parabolic) all_parabolic = false;
    if (arcs[i] != SectorType::Parabolic || arcs[(i + n - 1) % n] != SectorType::Parabolic) {
      start = i;
      break;
    }
  }
  if (all_parabolic) {
    out.nodal = 1;
    out.sectors.push_back({SectorType::Parabolic, out.cycle.front().label, out.cycle.front().label});
    out.note = "every arc is parabolic";
    return out;
  }
  for (std::size_t k = 0; k < n;) {
    std::size_t i = (start + k) % n;
    Sector sec{arcs[i], out.cycle[i].label, ""};
    std::size_t len = 1;
    if (arcs[i] == SectorType::Parabolic)
      while (len < n && arcs[(i + len) % n] == SectorType::Parabolic) ++len;
    sec.to = out.cycle[(i + len) % n].label;
    out.sectors.push_back(sec);
    k += len;
  }
  for (const auto &s : out.sectors) {
    if (s.type == SectorType::Parabolic) ++out.nodal;
    if (s.type == SectorType::Hyperbolic) ++out.saddle;
    if (s.type == SectorType::Elliptic) ++out.elliptic;
  }
  return out;
}

inline SectorStructure assemble_sectors(const PlanarSystem &original) {
  if (original.p.is_zero()) return assemble_sectors(BlowupChart{}, BlowupChart{}, original);
  return assemble_sectors(blowup_and_rescale(original, Branch::Positive), blowup_and_rescale(original, Branch::Negative), original);
}

}  // namespace dtk
