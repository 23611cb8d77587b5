#pragma once

// Equilibrium classification from exact linear data, with center-manifold
// reduction for points carrying a single zero eigenvalue.

#include <string>
#include <utility>

#include "dtk/system.hpp"

namespace dtk {

struct UndeterminedAtOrder : Error {
  using Error::Error;
};

enum class Category { HyperbolicNode, HyperbolicSaddle, HyperbolicFocus, LinearCenter, SemiHyperbolic, Nilpotent, LinearlyZero };
enum class Stability { None, Stable, Unstable };
enum class SemiKind { Undetermined, Node, Saddle, SaddleNode };

struct ClassificationTag {
  Category category = Category::LinearlyZero;
  Stability stability = Stability::None;
  SemiKind semi = SemiKind::Undetermined;
  bool star = false;
  /// Set for linear centers: focus vs center is not resolved.
  bool caveat = false;
  /// Center-manifold evidence: reduced flow a * s^m + O(s^(m+1)).
  int multiplicity = 0;
  Rational leading_coeff = 0;
  /// Sign of the nonzero eigenvalue for semi-hyperbolic points.
  int lambda_sign = 0;
  std::string evidence;

  bool is_hyperbolic() const {
    return category == Category::HyperbolicNode || category == Category::HyperbolicSaddle || category == Category::HyperbolicFocus;
  }
  bool is_saddle() const {
    return category == Category::HyperbolicSaddle || (category == Category::SemiHyperbolic && semi == SemiKind::Saddle);
  }

  /// Stable vocabulary used in reports.
  std::string to_string() const {
    auto stab = [this] { return stability == Stability::Stable ? "stable" : "unstable"; };
    switch (category) {
      case Category::HyperbolicNode: return std::string("hyperbolic-node(") + stab() + ")";
      case Category::HyperbolicSaddle: return "hyperbolic-saddle";
      case Category::HyperbolicFocus: return std::string("hyperbolic-focus(") + stab() + ")";
      case Category::LinearCenter: return "linear-center";
      case Category::Nilpotent: return "nilpotent";
      case Category::LinearlyZero: return "linearly-zero";
      case Category::SemiHyperbolic:
        switch (semi) {
          case SemiKind::Node: return std::string("semi-hyperbolic(node,") + stab() + ")";
          case SemiKind::Saddle: return "semi-hyperbolic(saddle)";
          case SemiKind::SaddleNode: return "semi-hyperbolic(saddle-node)";
          case SemiKind::Undetermined: return "semi-hyperbolic(undetermined)";
        }
    }
    return "unknown";
  }
};

inline ClassificationTag classify_linear(const ExactMatrix &j) {
  ClassificationTag tag;
  if (j.is_zero()) {
    tag.category = Category::LinearlyZero;
    tag.evidence = "zero linear part";
    return tag;
  }
  const NumberField &f = j.field;
  int det = f.sign(j.det()), tr = f.sign(j.trace()), disc = f.sign(j.discriminant());
  tag.evidence = "sign(tr)=" + std::to_string(tr) + " sign(det)=" + std::to_string(det) + " sign(tr^2-4det)=" + std::to_string(disc);
  if (det < 0) {
    tag.category = Category::HyperbolicSaddle;
  } else if (det > 0) {
    if (disc >= 0) {
      tag.category = Category::HyperbolicNode;
      tag.star = f.is_zero(j.a[0][1]) && f.is_zero(j.a[1][0]) && f.is_zero(j.a[0][0] - j.a[1][1]);
    } else if (tr == 0) {
      tag.category = Category::LinearCenter;
      tag.caveat = true;
      tag.evidence += "; focus/center not resolved";
      return tag;
    } else {
      tag.category = Category::HyperbolicFocus;
    }
    tag.stability = tr < 0 ? Stability::Stable : Stability::Unstable;
  } else if (tr != 0) {
    tag.category = Category::SemiHyperbolic;
    tag.lambda_sign = tr;
  } else {
    tag.category = Category::Nilpotent;
  }
  return tag;
}

namespace detail {

inline UPoly truncate(const UPoly &p, int order) {
  std::vector<Rational> c;
  for (int k = 0; k <= std::min(p.degree(), order); ++k) c.push_back(p.coeff(k));
  return UPoly(std::move(c));
}

/// f(s, h(s)) truncated at the given order.
inline UPoly along_graph(const RationalPoly &f, const UPoly &h, int order) {
  UPoly acc;
  std::vector<UPoly> hp{UPoly(Rational(1))};
  for (const auto &[m, c] : f.terms()) {
    if (m.i > order) continue;
    while (static_cast<int>(hp.size()) <= m.j) hp.push_back(truncate(hp.back() * h, order));
    acc = acc + truncate(UPoly::monomial(c, m.i) * hp[static_cast<std::size_t>(m.j)], order);
  }
  return truncate(acc, order);
}

}  // namespace detail

/// Reduced flow on the center manifold of a semi-hyperbolic equilibrium with
/// rational coordinates, expanded to `order`.
inline ClassificationTag classify_semihyperbolic(const PlanarSystem &sys, const AlgebraicPoint &pt, int order = 6) {
  if (order < 2) throw Error("center-manifold order must be at least 2");
  if (!pt.is_rational()) throw Error("center-manifold reduction needs a rational equilibrium");
  const Rational x0 = pt.x_number().rational_value(), y0 = pt.y_number().rational_value();
  const ExactMatrix jm = jacobian_at(sys, pt);
  Rational a = *jm.rational_entry(0, 0), b = *jm.rational_entry(0, 1), c = *jm.rational_entry(1, 0), d = *jm.rational_entry(1, 1);
  const Rational lambda = a + d;
  if (a * d - b * c != 0 || lambda == 0) throw Error("equilibrium is not semi-hyperbolic");

  // Kernel direction e0 and eigendirection e1 for lambda.
  auto null_of = [](const Rational &r0, const Rational &r1, const Rational &s0, const Rational &s1) {
    std::pair<Rational, Rational> v = (r0 != 0 || r1 != 0) ? std::pair<Rational, Rational>{-r1, r0} : std::pair<Rational, Rational>{-s1, s0};
    Rational n = v.first != 0 ? v.first : v.second;
    return std::pair<Rational, Rational>{v.first / n, v.second / n};
  };
  auto e0 = null_of(a, b, c, d);
  auto e1 = null_of(a - lambda, b, c, d - lambda);

  const VarNames sv{"s", "n"};
  RationalPoly s = RationalPoly::var(0, sv), n = RationalPoly::var(1, sv);
  RationalPoly xs = RationalPoly(x0, sv) + s * e0.first + n * e1.first;
  RationalPoly ys = RationalPoly(y0, sv) + s * e0.second + n * e1.second;
  RationalPoly pt_ = sys.p.substitute(xs, ys), qt = sys.q.substitute(xs, ys);
  // (s', n') = M^{-1} (P, Q) with M = [e0 e1].
  Rational det = e0.first * e1.second - e1.first * e0.second;
  RationalPoly sdot = (pt_ * e1.second - qt * e1.first) * Rational(Rational(1) / det);
  RationalPoly ndot = (qt * e0.first - pt_ * e0.second) * Rational(Rational(1) / det);
  RationalPoly g = ndot - n * lambda;

  // Graph n = h(s): h'(s) s' = lambda h + g(s, h), solved degree by degree.
  UPoly h;
  for (int k = 2; k <= order; ++k) {
    UPoly lhs = detail::truncate(h.derivative() * detail::along_graph(sdot, h, k), k);
    UPoly rhs = detail::along_graph(g, h, k);
    Rational ck = (lhs.coeff(k) - rhs.coeff(k)) / lambda;
    h = h + UPoly::monomial(ck, k);
  }
  UPoly reduced = detail::along_graph(sdot, h, order);

  ClassificationTag tag;
  tag.category = Category::SemiHyperbolic;
  tag.lambda_sign = sgn(lambda);
  int m = 0;
  for (int k = 1; k <= order; ++k)
    if (reduced.coeff(k) != 0) {
      m = k;
      break;
    }
  if (m == 0) throw UndeterminedAtOrder("reduced flow vanishes to order " + std::to_string(order));
  tag.multiplicity = m;
  tag.leading_coeff = reduced.coeff(m);
  if (m % 2 == 0) {
    tag.semi = SemiKind::SaddleNode;
  } else if (sgn(tag.leading_coeff) == sgn(lambda)) {
    tag.semi = SemiKind::Node;
    tag.stability = lambda < 0 ? Stability::Stable : Stability::Unstable;
  } else {
    tag.semi = SemiKind::Saddle;
  }
  tag.evidence = "lambda=" + lambda.get_str() + "; reduced flow s' = " + tag.leading_coeff.get_str() + "*s^" + std::to_string(m) +
                 " + O(s^" + std::to_string(m + 1) + ")";
  return tag;
}

struct Equilibrium {
  AlgebraicPoint point;
  ExactMatrix jacobian;
  ClassificationTag kind;
  std::string context;
};

/// Jacobian plus classification; semi-hyperbolic rational points get the
/// center-manifold treatment.
inline Equilibrium make_equilibrium(const PlanarSystem &sys, AlgebraicPoint pt, std::string context, int order = 6) {
  ExactMatrix j = jacobian_at(sys, pt);
  ClassificationTag tag = classify_linear(j);
  if (tag.category == Category::SemiHyperbolic && pt.is_rational()) {
    try {
      tag = classify_semihyperbolic(sys, pt, order);
    } catch (const UndeterminedAtOrder &e) {
      tag.evidence += std::string("; ") + e.what();
    }
  }
  return {std::move(pt), std::move(j), std::move(tag), std::move(context)};
}

}  // namespace dtk
