#pragma once

// Darboux integrability: invariant algebraic curves and exponential factors
// with their cofactors, exponent relations, and the resulting first
// integrals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtk/compactify.hpp"
#include "dtk/equilibria.hpp"
#include "dtk/linalg.hpp"

namespace dtk {

struct SolverIncomplete : Error {
  using Error::Error;
};
struct RelationFails : Error {
  using Error::Error;
};
struct PoleOrBranch : Error {
  using Error::Error;
};

enum class DarbouxKind { AlgebraicCurve, ExponentialFactor };

struct DarbouxObject {
  DarbouxKind kind = DarbouxKind::AlgebraicCurve;
  /// The curve L, or the exponent g of e^g.
  RationalPoly body;
  RationalPoly cofactor;
  /// False for exponential factors whose cofactor exceeds degree n - 1.
  bool useful = true;

  std::string to_string() const {
    return kind == DarbouxKind::AlgebraicCurve ? body.to_string() : "exp(" + body.to_string() + ")";
  }
};

/// Scaling used for reported curves: constant term 1 when present,
/// otherwise leading coefficient 1.
inline RationalPoly canonical_scaling(const RationalPoly &l) {
  Rational c = l.coeff(0, 0);
  if (c != 0) return l * Rational(1 / c);
  return l.normalized();
}

/// D(L)/L for curves (rejected unless exact with degree <= n - 1), D(g) for
/// exponential factors (rejected for constant g).
inline std::optional<DarbouxObject> cofactor_of(const PlanarSystem &sys, const RationalPoly &candidate, DarbouxKind kind) {
  RationalPoly c = candidate.with_vars(sys.vars);
  if (c.is_zero()) throw Error("cofactor_of: zero candidate");
  if (c.is_constant()) return std::nullopt;
  RationalPoly d = derivation(sys, c);
  if (kind == DarbouxKind::ExponentialFactor) {
    return DarbouxObject{kind, c, d, d.total_degree() <= sys.degree() - 1};
  }
  auto k = try_divide(d, c);
  if (!k || k->total_degree() > sys.degree() - 1) return std::nullopt;
  return DarbouxObject{kind, c, k->with_vars(sys.vars), true};
}

namespace detail {

/// Continued-fraction rational approximation with bounded denominator.
inline Rational rational_from_double(double v, long maxden = 1000000) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > maxden) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = x - a;
    if (frac < 1e-13) break;
    x = 1 / frac;
  }
  return rational(h1, k1);
}

/// Complex roots of a univariate polynomial (Durand-Kerner).
inline std::vector<std::complex<double>> complex_roots(const UPoly &p) {
  int n = p.degree();
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = Rational(p.coeff(i) / p.lead()).get_d();
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  std::complex<double> seed(0.4, 0.9);
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i);
  for (int it = 0; it < 500; ++it) {
    double move = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> num = 0;
      for (int k = n; k >= 0; --k) num = num * z[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(k)];
      std::complex<double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      std::complex<double> step = num / den;
      z[static_cast<std::size_t>(i)] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-15) break;
  }
  return z;
}

/// Factors of a univariate polynomial over Q of degree <= 4 (irreducible,
/// monic, with multiplicity); the content is dropped.
inline std::vector<std::pair<UPoly, int>> factor_small(UPoly f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() > 4) throw Error("factor_small handles degree <= 4");
  auto push = [&out](const UPoly &q) {
    for (auto &[g, m] : out)
      if (g == q) {
        ++m;
        return;
      }
    out.emplace_back(q, 1);
  };
  for (const auto &r : rational_roots(f)) {
    UPoly lin({Rational(-r), Rational(1)});
    while (f.degree() >= 1 && (f % lin).is_zero()) {
      f = f / lin;
      push(lin);
    }
  }
  f = f.monic();
  if (f.degree() == 2 || f.degree() == 3) push(f);
  if (f.degree() == 4) {
    UPoly g = gcd(f, f.derivative());
    if (g.degree() == 2) {
      push(g);
      push(g);
    } else {
      auto z = complex_roots(f);
      bool split = false;
      for (int j = 1; j < 4 && !split; ++j) {
        std::complex<double> s = z[0] + z[static_cast<std::size_t>(j)], pr = z[0] * z[static_cast<std::size_t>(j)];
        UPoly q({rational_from_double(pr.real()), rational_from_double(-s.real()), Rational(1)});
        if ((f % q).is_zero()) {
          push(q);
          push(f / q);
          split = true;
        }
      }
      if (!split) push(f);
    }
  }
  return out;
}

/// Q-irreducible factors (with multiplicity) of a binary form in the
/// system variables.
inline std::vector<std::pair<RationalPoly, int>> factor_binary_form(const RationalPoly &form) {
  std::vector<std::pair<RationalPoly, int>> out;
  int n = form.total_degree();
  int ymult = n;
  for (const auto &[m, c] : form.terms()) ymult = std::min(ymult, m.j);
  if (ymult > 0) out.emplace_back(RationalPoly::var(1, form.vars()), ymult);
  std::vector<Rational> g(static_cast<std::size_t>(n - ymult) + 1);
  for (const auto &[m, c] : form.terms()) g[static_cast<std::size_t>(m.i)] = c;
  for (const auto &[f, mult] : factor_small(UPoly(g))) {
    RationalPoly h(form.vars());
    for (int i = 0; i <= f.degree(); ++i) h.add_term(f.coeff(i), i, f.degree() - i);
    out.emplace_back(h, mult);
  }
  return out;
}

/// Whether a polynomial of degree 2 splits into two rational linear factors.
inline bool quadratic_reducible(const RationalPoly &l) {
  RationalPoly l2 = l.homogeneous_part(2), l1 = l.homogeneous_part(1);
  Rational l0 = l.coeff(0, 0);
  auto fac = factor_binary_form(l2);
  std::vector<RationalPoly> lines;
  for (const auto &[f, m] : fac) {
    if (f.total_degree() != 1) return false;
    for (int k = 0; k < m; ++k) lines.push_back(f);
  }
  Rational c = divide_exact(l2, lines[0] * lines[1]).coeff(0, 0);
  const RationalPoly &a = lines[0], &b = lines[1];
  // l1 = c (c2 a + c1 b), c c1 c2 = l0.
  Rational det = a.coeff(1, 0) * b.coeff(0, 1) - a.coeff(0, 1) * b.coeff(1, 0);
  if (det != 0) {
    Rational r0 = l1.coeff(1, 0) / c, r1 = l1.coeff(0, 1) / c;
    Rational c2 = (r0 * b.coeff(0, 1) - r1 * b.coeff(1, 0)) / det;
    Rational c1 = (a.coeff(1, 0) * r1 - a.coeff(0, 1) * r0) / det;
    return c * c1 * c2 == l0;
  }
  // l2 = c a^2: need l1 = beta a and t^2 + beta/c t + l0/c with rational roots.
  auto beta = try_divide(l1, a);
  if (!l1.is_zero() && (!beta || !beta->is_constant())) return false;
  Rational bt = l1.is_zero() ? Rational(0) : beta->coeff(0, 0);
  UPoly t({Rational(l0 / c), Rational(bt / c), Rational(1)});
  return !rational_roots(t).empty();
}

/// D3(F) / F for the cubic part of a Darboux-shape system.
inline std::optional<RationalPoly> homogeneous_cofactor(const RationalPoly &p3, const RationalPoly &q3, const RationalPoly &f) {
  return try_divide(f.derivative(0) * p3 + f.derivative(1) * q3, f);
}

/// Rational points where all the given polynomials vanish, assuming finitely
/// many; throws SolverIncomplete otherwise.
inline std::vector<std::pair<Rational, Rational>> rational_common_zeros(const std::vector<RationalPoly> &eqs, const std::string &branch) {
  std::vector<RationalPoly> nz;
  for (const auto &e : eqs)
    if (!e.is_zero()) nz.push_back(e.with_vars({"x", "y"}));
  if (nz.empty()) throw SolverIncomplete("unconstrained branch: " + branch);
  for (const auto &e : nz)
    if (e.is_constant()) return {};
  for (std::size_t i = 0; i < nz.size(); ++i)
    for (std::size_t j = i + 1; j < nz.size(); ++j) {
      UPoly res = resultant(nz[i], nz[j], 1);
      if (res.is_zero()) continue;
      std::vector<std::pair<Rational, Rational>> out;
      for (const Rational &a : rational_roots(res)) {
        UPoly g;
        for (const auto &e : nz) {
          UPoly ea = e.partial_eval(0, a).to_upoly(1);
          if (!ea.is_zero()) g = g.is_zero() ? ea : gcd(g, ea);
        }
        if (g.is_zero()) throw SolverIncomplete("a vertical line of solutions in branch " + branch);
        for (const Rational &b : rational_roots(g)) out.emplace_back(a, b);
      }
      return out;
    }
  if (nz.size() == 1) {
    // One equation: only a curve of solutions unless it has none at all.
    throw SolverIncomplete("single residual equation " + nz[0].to_string() + " in branch " + branch);
  }
  throw SolverIncomplete("residual equations share a common curve in branch " + branch);
}

}  // namespace detail

struct InvariantInventory {
  std::vector<DarbouxObject> curves;
  /// Every line through the origin is invariant (x Q3 - y P3 vanishes).
  bool pencil = false;
  std::string note;
};

/// Invariant algebraic curves of degree <= maxdeg (1 or 2) of a system
/// x' = x + P3, y' = y + Q3, up to scalar multiples, Q-irreducible.
///
/// Writing L = L0 + L1 + L2 by homogeneous degree, the top part L_d is an
/// invariant of the cubic field, so a product of factors of x Q3 - y P3.
/// The lower parts then follow from the degree equations of D(L) = k L.
inline InvariantInventory find_algebraic_invariants(const PlanarSystem &sys, int maxdeg) {
  if (maxdeg < 1 || maxdeg > 2) throw Error("find_algebraic_invariants supports maxdeg 1 or 2");
  std::pair<RationalPoly, RationalPoly> parts;
  try {
    parts = darboux_cubic_parts(sys);
  } catch (const ShapeError &e) {
    throw SolverIncomplete(std::string("case split covers x' = x + P3, y' = y + Q3 only: ") + e.what());
  }
  const auto &[p3, q3] = parts;
  const VarNames &v = sys.vars;
  RationalPoly x = RationalPoly::var(0, v), y = RationalPoly::var(1, v);
  RationalPoly h = x * q3 - y * p3;
  InvariantInventory inv;
  if (h.is_zero()) {
    inv.pencil = true;
    inv.note = "x Q3 - y P3 vanishes: every line through the origin is invariant";
    return inv;
  }

  std::vector<RationalPoly> found;
  auto accept = [&](const RationalPoly &l) {
    if (l.total_degree() == 2 && detail::quadratic_reducible(l)) return;
    RationalPoly c = canonical_scaling(l);
    for (const auto &f : found)
      if (f == c) return;
    found.push_back(c);
  };

  auto factors = detail::factor_binary_form(h);
  std::vector<RationalPoly> lines, quads;
  for (const auto &[f, m] : factors) {
    if (f.total_degree() == 1) lines.push_back(f);
    if (f.total_degree() == 2) quads.push_back(f);
  }

  // Degree 1. L0 = 0: the line itself. L0 != 0: D3(L1) = -L1^3 / L0^2.
  for (const auto &l : lines) {
    accept(l);
    auto kappa = detail::homogeneous_cofactor(p3, q3, l);
    if (!kappa) continue;
    auto lam = try_divide(*kappa, l * l);
    if (!lam || !lam->is_constant()) continue;
    Rational neg = -lam->coeff(0, 0);
    if (neg <= 0) continue;
    for (const auto &r : rational_roots(UPoly({Rational(-neg), Rational(0), Rational(1)}))) {
      if (r <= 0) continue;
      accept(l * r + RationalPoly(Rational(1), v));
      accept(l * r - RationalPoly(Rational(1), v));
    }
  }
  if (maxdeg == 2) {
    std::vector<RationalPoly> tops = quads;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i; j < lines.size(); ++j) tops.push_back(lines[i] * lines[j]);
    for (const auto &f : tops) {
      auto kappa = detail::homogeneous_cofactor(p3, q3, f);
      if (!kappa) continue;
      // L0 = 0 forces L1 = 0 (otherwise L is reducible): L = F.
      accept(f);
      // L0 = 1, L1 = 0: kappa = 2 s F.
      if (auto c = try_divide(*kappa, f); c && c->is_constant() && !c->is_zero())
        accept(RationalPoly(Rational(1), v) + f * Rational(c->coeff(0, 0) / 2));
      // L0 = 1, L1 = a x + b y != 0: L1^2 = 2 s F - kappa and
      // D3(L1) = 3 s F L1 - L1^3, with s eliminated through one coefficient.
      const VarNames ab{"a", "b"};
      RationalPoly a = RationalPoly::var(0, ab), b = RationalPoly::var(1, ab);
      auto coeff_of_l1sq = [&](int i, int j) {
        if (i == 2) return a * a;
        if (j == 2) return b * b;
        return a * b * Rational(2);
      };
      auto fit = f.terms().begin();
      Monomial fm = fit->first;
      Rational fc = fit->second;
      RationalPoly s = (coeff_of_l1sq(fm.i, fm.j) + RationalPoly(kappa->coeff(fm.i, fm.j), ab)) * Rational(1 / (2 * fc));
      std::vector<RationalPoly> eqs;
      for (int i = 0; i <= 2; ++i) {
        int j = 2 - i;
        eqs.push_back(coeff_of_l1sq(i, j) - s * f.coeff(i, j) * Rational(2) + RationalPoly(kappa->coeff(i, j), ab));
      }
      // D3(a x + b y) = a P3 + b Q3; F L1 and L1^3 expanded coefficientwise.
      for (int i = 0; i <= 3; ++i) {
        int j = 3 - i;
        RationalPoly d3 = a * p3.coeff(i, j) + b * q3.coeff(i, j);
        static const long binom[4] = {1, 3, 3, 1};
        RationalPoly fl1(ab);
        if (i >= 1) fl1 = fl1 + a * f.coeff(i - 1, j);
        if (j >= 1) fl1 = fl1 + b * f.coeff(i, j - 1);
        RationalPoly l1cube = a.pow(static_cast<unsigned>(i)) * b.pow(static_cast<unsigned>(j)) * Rational(binom[i]);
        eqs.push_back(d3 - s * fl1 * Rational(3) + l1cube);
      }
      for (const auto &[av, bv] : detail::rational_common_zeros(eqs, "L0 = 1, L1 != 0, top " + f.to_string())) {
        if (av == 0 && bv == 0) continue;
        Rational sv = s(av, bv);
        if (sv == 0) continue;
        accept(RationalPoly(Rational(1), v) + x * av + y * bv + f * sv);
      }
    }
  }
  for (const auto &l : found) {
    auto obj = cofactor_of(sys, l, DarbouxKind::AlgebraicCurve);
    if (!obj) throw SolverIncomplete("candidate " + l.to_string() + " failed the invariance check");
    inv.curves.push_back(*obj);
  }
  std::sort(inv.curves.begin(), inv.curves.end(), [](const DarbouxObject &l, const DarbouxObject &r) {
    if (l.body.total_degree() != r.body.total_degree()) return l.body.total_degree() < r.body.total_degree();
    return l.body.to_string() < r.body.to_string();
  });
  return inv;
}

/// Exponential factors e^g, deg g <= maxdeg, no constant term. The subspace
/// of g with deg D(g) <= n - 1 is returned as a basis (useful = true); each
/// remaining monomial g comes back with its cofactor and useful = false.
inline std::vector<DarbouxObject> find_exponential_factors(const PlanarSystem &sys, int maxdeg) {
  if (maxdeg < 1 || maxdeg > 2) throw Error("find_exponential_factors supports maxdeg 1 or 2");
  const int bound = sys.degree() - 1;
  std::vector<RationalPoly> monos, images;
  for (int d = 1; d <= maxdeg; ++d)
    for (int i = d; i >= 0; --i) {
      monos.push_back(RationalPoly::term(1, i, d - i, sys.vars));
      images.push_back(derivation(sys, monos.back()));
    }
  std::set<std::pair<int, int>> high;
  for (const auto &im : images)
    for (const auto &[m, c] : im.terms())
      if (m.degree() > bound) high.insert({m.i, m.j});
  RationalMatrix rows;
  for (const auto &[i, j] : high) {
    std::vector<Rational> r;
    for (const auto &im : images) r.push_back(im.coeff(i, j));
    rows.push_back(std::move(r));
  }
  std::vector<DarbouxObject> out;
  for (const auto &vec : nullspace(rows, monos.size())) {
    RationalPoly g(sys.vars);
    for (std::size_t k = 0; k < monos.size(); ++k) g = g + monos[k] * vec[k];
    out.push_back(*cofactor_of(sys, g, DarbouxKind::ExponentialFactor));
  }
  for (std::size_t k = 0; k < monos.size(); ++k)
    if (images[k].total_degree() > bound) out.push_back(*cofactor_of(sys, monos[k], DarbouxKind::ExponentialFactor));
  return out;
}

/// Basis of rational vectors alpha with sum alpha_i k_i = 0.
inline std::vector<std::vector<Rational>> solve_exponent_relation(const std::vector<DarbouxObject> &objects) {
  if (objects.empty()) throw Error("solve_exponent_relation needs at least one object");
  std::set<std::pair<int, int>> monos;
  for (const auto &o : objects)
    for (const auto &[m, c] : o.cofactor.terms()) monos.insert({m.i, m.j});
  RationalMatrix rows;
  for (const auto &[i, j] : monos) {
    std::vector<Rational> r;
    for (const auto &o : objects) r.push_back(o.cofactor.coeff(i, j));
    rows.push_back(std::move(r));
  }
  return nullspace(rows, objects.size());
}

struct FirstIntegral {
  std::vector<std::pair<DarbouxObject, Rational>> factors;
  bool verified = false;
  /// All factors with nonzero exponent are algebraic curves.
  bool rational = false;
  /// Every factor with nonzero exponent is constant: H is identically constant.
  bool trivial = false;
  /// Exponents scaled to coprime integers: H^scale = numerator/denominator * exp(exponent).
  Rational scale = 1;
  RationalPoly numerator, denominator, exponent;
  std::vector<std::string> remarkable_values;
  bool remarkable_verified = false;
  std::string text;
};

namespace detail {

inline std::string factor_text(const RationalPoly &l, const Integer &e) {
  std::string s = l.terms().size() > 1 ? "(" + l.to_string() + ")" : l.to_string();
  if (e != 1) s += "^" + e.get_str();
  return s;
}

}  // namespace detail

inline FirstIntegral build_first_integral(const std::vector<DarbouxObject> &objects, const std::vector<Rational> &alpha) {
  if (objects.size() != alpha.size()) throw Error("build_first_integral: one exponent per object required");
  if (objects.empty()) throw Error("build_first_integral: no objects");
  VarNames vars = objects.front().body.vars();
  RationalPoly sum(vars);
  for (std::size_t i = 0; i < objects.size(); ++i) sum = sum + objects[i].cofactor * alpha[i];
  if (!sum.is_zero()) throw RelationFails("sum of alpha_i k_i = " + sum.to_string() + " is not zero");

  FirstIntegral h;
  h.verified = true;
  h.rational = true;
  h.trivial = true;
  Integer den = 1;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    h.factors.emplace_back(objects[i], alpha[i]);
    if (alpha[i] == 0) continue;
    den = lcm(den, alpha[i].get_den());
    if (!objects[i].body.is_constant()) h.trivial = false;
    if (objects[i].kind == DarbouxKind::ExponentialFactor) h.rational = false;
  }
  Integer num_gcd = 0;
  for (const auto &a : alpha)
    if (a != 0) num_gcd = gcd(num_gcd, Rational(a * den).get_num());
  h.scale = num_gcd == 0 ? Rational(1) : Rational(den, num_gcd);
  h.scale.canonicalize();
  h.numerator = RationalPoly(Rational(1), vars);
  h.denominator = RationalPoly(Rational(1), vars);
  h.exponent = RationalPoly(vars);
  std::string num_s, den_s, exp_s;
  int den_count = 0;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (alpha[i] == 0 || objects[i].body.is_constant()) continue;
    Rational e = alpha[i] * h.scale;
    const RationalPoly &l = objects[i].body;
    if (objects[i].kind == DarbouxKind::ExponentialFactor) {
      h.exponent = h.exponent + l * e;
      continue;
    }
    Integer n = e.get_num();
    Integer an = n < 0 ? Integer(-n) : n;
    RationalPoly pw = l.pow(static_cast<unsigned>(an.get_ui()));
    if (n > 0) {
      h.numerator = h.numerator * pw;
      num_s += (num_s.empty() ? "" : "*") + detail::factor_text(l, an);
    } else {
      h.denominator = h.denominator * pw;
      den_s += (den_s.empty() ? "" : "*") + detail::factor_text(l, an);
      ++den_count;
    }
  }
  if (!h.exponent.is_zero()) num_s += (num_s.empty() ? "" : "*") + ("exp(" + h.exponent.to_string() + ")");
  if (h.trivial) {
    h.text = "1";
  } else {
    h.text = num_s.empty() ? "1" : num_s;
    if (!den_s.empty()) h.text += "/" + (den_count > 1 ? "(" + den_s + ")" : den_s);
  }
  if (h.rational && !h.trivial) {
    h.remarkable_values = {"0", "inf"};
    // Level 0 and the pole set are unions of the factor curves, each of
    // which carries a verified cofactor.
    h.remarkable_verified = true;
  }
  return h;
}

/// Re-check the defining identity of each factor against the system, and the
/// annihilation of the cofactor combination.
inline bool verify_first_integral(const PlanarSystem &sys, const FirstIntegral &h) {
  RationalPoly sum(sys.vars);
  for (const auto &[o, a] : h.factors) {
    RationalPoly d = derivation(sys, o.body);
    RationalPoly expect = o.kind == DarbouxKind::AlgebraicCurve ? o.cofactor * o.body.with_vars(sys.vars) : o.cofactor;
    if (!(d == expect)) return false;
    sum = sum + o.cofactor * a;
  }
  return sum.is_zero();
}

/// H at a point with the original (uncleared) exponents.
inline double evaluate_integral(const FirstIntegral &h, double x, double y) {
  double v = 1, ex = 0;
  for (const auto &[o, a] : h.factors) {
    if (a == 0) continue;
    double l = o.body.eval(x, y), ad = a.get_d();
    if (o.kind == DarbouxKind::ExponentialFactor) {
      ex += ad * l;
      continue;
    }
    bool integer = a.get_den() == 1;
    if (l == 0) {
      if (a < 0) throw PoleOrBranch("pole of " + o.body.to_string() + " at the evaluation point");
      return 0;
    }
    if (l < 0 && !integer) throw PoleOrBranch("negative base " + o.body.to_string() + " with non-integer exponent");
    v *= std::pow(l, ad);
  }
  return v * std::exp(ex);
}

/// Gradient of H (original exponents) from the logarithmic derivative.
inline std::pair<double, double> integral_gradient(const FirstIntegral &h, double x, double y) {
  double hv = evaluate_integral(h, x, y), gx = 0, gy = 0;
  for (const auto &[o, a] : h.factors) {
    if (a == 0) continue;
    double ad = a.get_d(), lx = o.body.derivative(0).eval(x, y), ly = o.body.derivative(1).eval(x, y);
    if (o.kind == DarbouxKind::ExponentialFactor) {
      gx += ad * lx;
      gy += ad * ly;
    } else {
      double l = o.body.eval(x, y);
      gx += ad * lx / l;
      gy += ad * ly / l;
    }
  }
  return {hv * gx, hv * gy};
}

/// First subset (by size, then lexicographically by index) whose cofactors
/// admit a relation using every member. Returns (indices, alpha).
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<Rational>>> minimal_relation(
    const std::vector<DarbouxObject> &objects) {
  const std::size_t n = objects.size();
  for (std::size_t size = 2; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> idx;
      std::vector<DarbouxObject> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) {
          idx.push_back(i);
          sub.push_back(objects[i]);
        }
      auto basis = solve_exponent_relation(sub);
      if (basis.size() == 1 && std::all_of(basis[0].begin(), basis[0].end(), [](const Rational &a) { return a != 0; }))
        return std::make_pair(idx, basis[0]);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

struct DarbouxAnalysis {
  InvariantInventory inventory;
  std::vector<DarbouxObject> exponentials;
  /// Curves followed by the useful exponential factors; the relation space lives here.
  std::vector<DarbouxObject> objects;
  std::size_t relation_dimension = 0;
  std::optional<FirstIntegral> integral;
  std::string note;
};

/// Inventory, exponential factors and the first integral built from the
/// smallest relation among them.
inline DarbouxAnalysis darboux_analysis(const PlanarSystem &sys, int maxdeg) {
  DarbouxAnalysis a;
  a.inventory = find_algebraic_invariants(sys, maxdeg);
  a.exponentials = find_exponential_factors(sys, maxdeg);
  a.objects = a.inventory.curves;
  for (const auto &e : a.exponentials)
    if (e.useful) a.objects.push_back(e);
  if (a.objects.empty()) {
    a.note = "no Darboux objects found";
    return a;
  }
  a.relation_dimension = solve_exponent_relation(a.objects).size();
  auto rel = minimal_relation(a.objects);
  if (!rel) {
    a.note = "no nontrivial exponent relation";
    return a;
  }
  std::vector<DarbouxObject> sub;
  for (std::size_t i : rel->first) sub.push_back(a.objects[i]);
  a.integral = build_first_integral(sub, rel->second);
  a.integral->verified = a.integral->verified && verify_first_integral(sys, *a.integral);
  return a;
}

}  // namespace dtk
