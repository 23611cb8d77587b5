#pragma once

// Real solutions of P = Q = 0 by resultant elimination, real-root isolation
// and gcd computation over Q(theta).

#include <algorithm>
#include <vector>

#include "dtk/classify.hpp"

namespace dtk {

struct PositiveDimensional : Error {
  using Error::Error;
};

namespace detail {

using FieldPoly = std::vector<UPoly>;  // ascending coefficients in y over Q(theta)

inline void strip(const NumberField &f, FieldPoly &a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

inline FieldPoly field_rem(const NumberField &f, FieldPoly a, const FieldPoly &b) {
  UPoly inv = f.inverse(b.back());
  while (a.size() >= b.size()) {
    UPoly factor = f.mul(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = f.reduce(a[k + shift] - f.mul(factor, b[k]));
    a.pop_back();
    strip(f, a);
  }
  return a;
}

inline FieldPoly field_gcd(const NumberField &f, FieldPoly a, FieldPoly b) {
  strip(f, a);
  strip(f, b);
  while (!b.empty()) {
    FieldPoly r = field_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline FieldPoly specialize(const RationalPoly &p, const AlgebraicNumber &theta) {
  FieldPoly out(static_cast<std::size_t>(std::max(p.degree_in(1), 0)) + 1);
  for (const auto &[m, c] : p.terms()) out[static_cast<std::size_t>(m.j)] = out[static_cast<std::size_t>(m.j)] + UPoly::monomial(c, m.i);
  for (auto &e : out) e = e % theta.defining_poly();
  return out;
}

inline std::vector<Rational> shear_candidates() {
  return {0, 1, -1, 2, -2, 3, -3, rational(1, 2), rational(-1, 2), 5, -5, rational(1, 3), 7, rational(-2, 3), 11};
}

}  // namespace detail

/// All real common zeros of two bivariate polynomials. Throws
/// PositiveDimensional when they share a curve of zeros.
inline std::vector<AlgebraicPoint> solve_polynomial_system(const RationalPoly &p, const RationalPoly &q) {
  if (p.is_zero() || q.is_zero()) {
    const RationalPoly &other = p.is_zero() ? q : p;
    if (other.is_constant() && !other.is_zero()) return {};
    throw PositiveDimensional("a component vanishes identically");
  }
  const VarNames v{"x", "y"};
  for (const Rational &c : detail::shear_candidates()) {
    RationalPoly xs = RationalPoly::var(0, v) - RationalPoly::var(1, v) * c, ys = RationalPoly::var(1, v);
    RationalPoly ps = p.with_vars(v).substitute(xs, ys), qs = q.with_vars(v).substitute(xs, ys);
    UPoly res = resultant(ps, qs, 1);
    if (res.is_zero()) throw PositiveDimensional("components share a common factor");
    std::vector<AlgebraicPoint> pts;
    bool generic = true;
    for (const AlgebraicNumber &theta : real_roots(res)) {
      NumberField field(theta);
      detail::FieldPoly a = detail::specialize(ps, theta), b = detail::specialize(qs, theta);
      detail::strip(field, a);
      detail::strip(field, b);
      if (a.empty() && b.empty()) throw PositiveDimensional("a whole vertical line of common zeros");
      detail::FieldPoly g = a.empty() ? b : b.empty() ? a : detail::field_gcd(field, a, b);
      if (g.size() <= 1) continue;
      if (g.size() > 2) {
        generic = false;
        break;
      }
      UPoly y = field.reduce(-field.mul(g[0], field.inverse(g[1])));
      UPoly x = field.reduce(UPoly::x() - y * UPoly(c));
      AlgebraicPoint pt(field, x, y);
      if (!pt.vanishes(p.with_vars(v)) || !pt.vanishes(q.with_vars(v))) {
        generic = false;
        break;
      }
      pts.push_back(std::move(pt));
    }
    if (!generic) continue;
    std::sort(pts.begin(), pts.end(), [](const AlgebraicPoint &l, const AlgebraicPoint &r) {
      int cx = compare(l.x_number(), r.x_number());
      return cx != 0 ? cx < 0 : compare(l.y_number(), r.y_number()) < 0;
    });
    return pts;
  }
  throw Error("no generic projection found among the shear candidates");
}

/// Finite equilibria with Jacobians and classifications (cubic systems).
inline std::vector<Equilibrium> finite_equilibria(const PlanarSystem &sys, int order = 6) {
  if (sys.degree() > 3) throw Error("finite_equilibria is specified for systems of degree <= 3");
  std::vector<Equilibrium> out;
  for (auto &pt : solve_polynomial_system(sys.p, sys.q)) out.push_back(make_equilibrium(sys, std::move(pt), "finite", order));
  return out;
}

}  // namespace dtk
