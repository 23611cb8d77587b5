#pragma once

// Planar polynomial vector fields, the points they are evaluated at, and the
// lineage of coordinate changes that produced them.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtk/algebraic.hpp"
#include "dtk/poly.hpp"

namespace dtk {

struct NotInvariant : Error {
  using Error::Error;
};

enum class TransformKind {
  ChartX,       // u = y/x, z = 1/x, field multiplied by z^2
  ChartY,       // v = x/y, z = 1/y, field multiplied by z^2
  Blowup,       // w = z / |u|^(1/2) on one branch
  TimeRescale,  // field divided by a polynomial factor
  DirectionalZ, // u = ubar * r^2, z = s * r, field divided by r^k
  Translate,    // first coordinate shifted so a point moves to the origin
};

/// One step of a system's history. The parent components are kept so the
/// step can be replayed and checked.
struct Transform {
  TransformKind kind;
  std::string description;
  RationalPoly parent_p, parent_q;
  VarNames parent_vars{"x", "y"};
  Branch branch = Branch::Positive;
  /// ChartX/ChartY: multiplier z^2. TimeRescale/DirectionalZ: divisor.
  RationalPoly factor;
  /// Region where the step reverses time ("" when it never does).
  std::string reversed_on;
  Rational shift = 0;
  int direction_sign = 1;
};

struct PlanarSystem {
  RationalPoly p, q;
  VarNames vars{"x", "y"};
  std::vector<Transform> lineage;

  PlanarSystem() = default;
  PlanarSystem(RationalPoly p_comp, RationalPoly q_comp, VarNames names = {"x", "y"})
      : p(p_comp.with_vars(names)), q(q_comp.with_vars(names)), vars(std::move(names)) {}

  int degree() const { return std::max(p.total_degree(), q.total_degree()); }
  friend bool operator==(const PlanarSystem &a, const PlanarSystem &b) { return a.p == b.p && a.q == b.q; }
  std::string to_string() const {
    return vars[0] + "' = " + p.to_string() + ", " + vars[1] + "' = " + q.to_string();
  }
};

/// x' = x - x^2 y + p x y^2 + y^3,  y' = y + p y^3.
inline PlanarSystem family_two(const Rational &p) {
  std::map<std::string, Rational> params{{"p", p}};
  return PlanarSystem(parse_poly("x - x^2*y + p*x*y^2 + y^3", params), parse_poly("y + p*y^3", params));
}

/// Lie derivative of f along the field: f_x P + f_y Q.
inline RationalPoly derivation(const PlanarSystem &sys, const RationalPoly &f) {
  RationalPoly g = f.with_vars(sys.vars);
  return (g.derivative(0) * sys.p + g.derivative(1) * sys.q).with_vars(sys.vars);
}

/// A point whose coordinates live in a common real number field Q(theta).
class AlgebraicPoint {
 public:
  AlgebraicPoint(const Rational &x, const Rational &y) : field_(), x_(x), y_(y), xa_(x), ya_(y) {}
  AlgebraicPoint(NumberField field, UPoly x, UPoly y)
      : field_(std::move(field)),
        x_(field_.reduce(x)),
        y_(field_.reduce(y)),
        xa_(field_.to_algebraic(x_)),
        ya_(field_.to_algebraic(y_)) {}

  const NumberField &field() const { return field_; }
  const UPoly &x() const { return x_; }
  const UPoly &y() const { return y_; }
  /// Per-coordinate defining polynomial and isolating interval.
  const AlgebraicNumber &x_number() const { return xa_; }
  const AlgebraicNumber &y_number() const { return ya_; }
  bool is_rational() const { return xa_.is_rational() && ya_.is_rational(); }
  std::pair<double, double> approx() const { return {xa_.approx(), ya_.approx()}; }
  std::string to_string() const { return "(" + xa_.to_string() + ", " + ya_.to_string() + ")"; }

  /// Value of a bivariate polynomial at this point, as a field element.
  UPoly evaluate(const RationalPoly &f) const {
    UPoly acc;
    std::map<int, UPoly> xp, yp;
    auto power = [this](std::map<int, UPoly> &cache, const UPoly &base, int e) -> const UPoly & {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      UPoly r = Rational(1);
      for (int k = 0; k < e; ++k) r = field_.mul(r, base);
      return cache.emplace(e, std::move(r)).first->second;
    };
    for (const auto &[m, c] : f.terms()) acc = acc + field_.mul(power(xp, x_, m.i), power(yp, y_, m.j)) * UPoly(c);
    return field_.reduce(acc);
  }
  bool vanishes(const RationalPoly &f) const { return field_.is_zero(evaluate(f)); }

 private:
  NumberField field_;
  UPoly x_, y_;
  AlgebraicNumber xa_, ya_;
};

/// 2x2 matrix over the number field of a point.
struct ExactMatrix {
  NumberField field;
  std::array<std::array<UPoly, 2>, 2> a;

  UPoly trace() const { return field.reduce(a[0][0] + a[1][1]); }
  UPoly det() const { return field.reduce(field.mul(a[0][0], a[1][1]) - field.mul(a[0][1], a[1][0])); }
  UPoly discriminant() const {
    UPoly t = trace();
    return field.reduce(field.mul(t, t) - det() * UPoly(Rational(4)));
  }
  bool is_zero() const {
    for (const auto &row : a)
      for (const auto &e : row)
        if (!field.is_zero(e)) return false;
    return true;
  }
  std::optional<Rational> rational_entry(int r, int c) const {
    return field.as_rational(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  double entry(int r, int c) const { return field.to_double(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]); }
  std::string entry_string(int r, int c) const {
    return field.to_algebraic(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]).to_string();
  }
  ExactMatrix negated() const {
    ExactMatrix m = *this;
    for (auto &row : m.a)
      for (auto &e : row) e = -e;
    return m;
  }
  static ExactMatrix rational(const Rational &a00, const Rational &a01, const Rational &a10, const Rational &a11) {
    ExactMatrix m;
    m.a = {{{UPoly(a00), UPoly(a01)}, {UPoly(a10), UPoly(a11)}}};
    return m;
  }
};

inline ExactMatrix jacobian_at(const PlanarSystem &sys, const AlgebraicPoint &pt) {
  ExactMatrix m;
  m.field = pt.field();
  m.a[0][0] = pt.evaluate(sys.p.derivative(0));
  m.a[0][1] = pt.evaluate(sys.p.derivative(1));
  m.a[1][0] = pt.evaluate(sys.q.derivative(0));
  m.a[1][1] = pt.evaluate(sys.q.derivative(1));
  return m;
}

/// Cofactor k with D(line) = k * line, or nullopt when the line is not invariant.
inline std::optional<RationalPoly> invariant_line_check(const PlanarSystem &sys, const RationalPoly &line) {
  if (line.total_degree() != 1) throw Error("invariant_line_check expects a polynomial of degree exactly 1");
  return try_divide(derivation(sys, line), line.with_vars(sys.vars));
}

/// y = slope * x (through the origin) or y = constant.
struct LineSpec {
  enum class Kind { ThroughOrigin, Horizontal } kind;
  Rational value;
  static LineSpec slope(Rational c) { return {Kind::ThroughOrigin, std::move(c)}; }
  static LineSpec horizontal(Rational c) { return {Kind::Horizontal, std::move(c)}; }
};

/// One-dimensional dynamics (x', y') along an invariant line, parametrized by x.
inline std::pair<UPoly, UPoly> restrict_to_line(const PlanarSystem &sys, const LineSpec &line) {
  RationalPoly xs = RationalPoly::var(0, sys.vars);
  RationalPoly ys = line.kind == LineSpec::Kind::ThroughOrigin ? xs * line.value : RationalPoly(line.value, sys.vars);
  RationalPoly pr = sys.p.substitute(xs, ys), qr = sys.q.substitute(xs, ys);
  RationalPoly tangency = line.kind == LineSpec::Kind::ThroughOrigin ? qr - pr * line.value : qr;
  if (!tangency.is_zero()) throw NotInvariant("line is not invariant for " + sys.to_string());
  return {pr.to_upoly(0), qr.to_upoly(0)};
}

}  // namespace dtk
