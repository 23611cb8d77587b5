#pragma once

// Replay and point mapping along a system's recorded history.

#include <cmath>
#include <utility>

#include "dtk/blowup.hpp"
#include "dtk/compactify.hpp"

namespace dtk {

/// Components produced by applying one recorded step to its stored parent.
inline std::pair<RationalPoly, RationalPoly> replay(const Transform &t) {
  PlanarSystem parent(t.parent_p, t.parent_q, t.parent_vars);
  switch (t.kind) {
    case TransformKind::ChartX:
    case TransformKind::ChartY: {
      bool first = t.kind == TransformKind::ChartX;
      return detail::chart_components(t.parent_p, t.parent_q, first, first ? VarNames{"u", "z"} : VarNames{"v", "z"});
    }
    case TransformKind::Blowup: {
      BlowupChart c = half_power_blowup(parent, t.branch);
      return {c.sys.p, c.sys.q};
    }
    case TransformKind::TimeRescale:
      return {divide_exact(t.parent_p, t.factor), divide_exact(t.parent_q, t.factor)};
    case TransformKind::DirectionalZ: {
      PlanarSystem z = directional_z_chart(parent, t.direction_sign);
      return {z.p, z.q};
    }
    case TransformKind::Translate: {
      RationalPoly a = RationalPoly::var(0, t.parent_vars) + RationalPoly(t.shift, t.parent_vars);
      RationalPoly b = RationalPoly::var(1, t.parent_vars);
      return {t.parent_p.substitute(a, b), t.parent_q.substitute(a, b)};
    }
  }
  throw Error("unknown transform kind");
}

/// True when every step, replayed from its parent, reproduces the next
/// parent (and finally the system itself) exactly.
inline bool verify_lineage(const PlanarSystem &sys) {
  for (std::size_t i = 0; i < sys.lineage.size(); ++i) {
    auto [p, q] = replay(sys.lineage[i]);
    const RationalPoly &np = i + 1 < sys.lineage.size() ? sys.lineage[i + 1].parent_p : sys.p;
    const RationalPoly &nq = i + 1 < sys.lineage.size() ? sys.lineage[i + 1].parent_q : sys.q;
    if (!(p == np) || !(q == nq)) return false;
  }
  return true;
}

/// Coordinates of a chart point in the parent of one step.
inline std::pair<double, double> to_parent(const Transform &t, std::pair<double, double> pt) {
  auto [a, b] = pt;
  switch (t.kind) {
    case TransformKind::ChartX: return {1 / b, a / b};
    case TransformKind::ChartY: return {a / b, 1 / b};
    case TransformKind::Blowup: return {a, b * std::sqrt(std::abs(a))};
    case TransformKind::TimeRescale: return {a, b};
    case TransformKind::DirectionalZ: return {a * b * b, t.direction_sign * b};
    case TransformKind::Translate: return {a + t.shift.get_d(), b};
  }
  return pt;
}

/// Map a point back through the whole history to the original plane.
inline std::pair<double, double> map_to_plane(const PlanarSystem &sys, std::pair<double, double> pt) {
  for (auto it = sys.lineage.rbegin(); it != sys.lineage.rend(); ++it) pt = to_parent(*it, pt);
  return pt;
}

/// +1 where the system's time runs with the original time at this point,
/// -1 where some rescale reversed it.
inline int time_sign_at(const PlanarSystem &sys, std::pair<double, double> pt) {
  int s = 1;
  for (auto it = sys.lineage.rbegin(); it != sys.lineage.rend(); ++it) {
    if (it->kind == TransformKind::TimeRescale && it->factor.eval(pt.first, pt.second) < 0) s = -s;
    pt = to_parent(*it, pt);
  }
  return s;
}

}  // namespace dtk
