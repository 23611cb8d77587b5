#pragma once

// Exact bivariate polynomials over Q and the half-integer extension used by
// the weighted blow-up.

#include <array>
#include <cctype>
#include <map>
#include <ostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtk/rational.hpp"
#include "dtk/upoly.hpp"

namespace dtk {

struct NotDivisible : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string &msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Exponent pair (power of first variable, power of second variable).
struct Monomial {
  int i = 0;
  int j = 0;
  int degree() const { return i + j; }
  friend bool operator==(const Monomial &, const Monomial &) = default;
};

/// Graded order: total degree ascending, then first-variable power descending.
/// Iteration order is the canonical rendering order.
struct GradedOrder {
  bool operator()(const Monomial &a, const Monomial &b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

using VarNames = std::array<std::string, 2>;

class RationalPoly {
 public:
  using Terms = std::map<Monomial, Rational, GradedOrder>;

  RationalPoly() = default;
  explicit RationalPoly(VarNames vars) : vars_(std::move(vars)) {}
  RationalPoly(const Rational &c, VarNames vars = {"x", "y"}) : vars_(std::move(vars)) {
    if (c != 0) terms_[{0, 0}] = c;
  }
  RationalPoly(long c) : RationalPoly(Rational(c)) {}

  static RationalPoly term(const Rational &c, int i, int j, VarNames vars = {"x", "y"}) {
    RationalPoly p(std::move(vars));
    if (c != 0) p.terms_[{i, j}] = c;
    return p;
  }
  static RationalPoly var(int which, VarNames vars = {"x", "y"}) {
    return which == 0 ? term(1, 1, 0, std::move(vars)) : term(1, 0, 1, std::move(vars));
  }

  const VarNames &vars() const { return vars_; }
  RationalPoly with_vars(VarNames vars) const {
    RationalPoly p = *this;
    p.vars_ = std::move(vars);
    return p;
  }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }
  Rational coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add_term(const Rational &c, int i, int j) {
    if (c == 0) return;
    auto &slot = terms_[{i, j}];
    slot += c;
    if (slot == 0) terms_.erase({i, j});
  }

  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  int degree_in(int which) const {
    int d = -1;
    for (const auto &[m, c] : terms_) d = std::max(d, which == 0 ? m.i : m.j);
    return d;
  }
  /// Lowest total degree carrying a nonzero term (-1 for the zero polynomial).
  int order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

  /// Highest term in the graded order.
  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    // Highest degree block; inside it the largest first-variable power
    // (graded lex with x > y), which is the first entry of that block.
    return *terms_.lower_bound(Monomial{total_degree(), 0});
  }

  RationalPoly homogeneous_part(int d) const {
    RationalPoly p(vars_);
    for (const auto &[m, c] : terms_)
      if (m.degree() == d) p.terms_[m] = c;
    return p;
  }

  /// Scaled so the leading coefficient is 1.
  RationalPoly normalized() const {
    if (is_zero()) return *this;
    return *this * Rational(Rational(1) / leading_term().second);
  }

  RationalPoly derivative(int which) const {
    RationalPoly p(vars_);
    for (const auto &[m, c] : terms_) {
      int e = which == 0 ? m.i : m.j;
      if (e == 0) continue;
      Monomial n = which == 0 ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
      p.terms_[n] = c * e;
    }
    return p;
  }

  Rational operator()(const Rational &a, const Rational &b) const {
    Rational s = 0;
    for (const auto &[m, c] : terms_) s += c * rpow(a, static_cast<unsigned>(m.i)) * rpow(b, static_cast<unsigned>(m.j));
    return s;
  }
  double eval(double a, double b) const {
    double s = 0;
    for (const auto &[m, c] : terms_) s += c.get_d() * std::pow(a, m.i) * std::pow(b, m.j);
    return s;
  }

  /// Fix one variable at a rational value.
  RationalPoly partial_eval(int which, const Rational &v) const {
    RationalPoly p(vars_);
    for (const auto &[m, c] : terms_) {
      if (which == 0)
        p.add_term(c * rpow(v, static_cast<unsigned>(m.i)), 0, m.j);
      else
        p.add_term(c * rpow(v, static_cast<unsigned>(m.j)), m.i, 0);
    }
    return p;
  }

  /// Polynomial composition: first variable -> a, second -> b.
  RationalPoly substitute(const RationalPoly &a, const RationalPoly &b) const {
    RationalPoly out(a.vars_);
    std::map<int, RationalPoly> apow, bpow;
    auto power = [](std::map<int, RationalPoly> &cache, const RationalPoly &base, int e) -> const RationalPoly & {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      RationalPoly r = RationalPoly(Rational(1), base.vars_);
      for (int k = 0; k < e; ++k) r = r * base;
      return cache.emplace(e, std::move(r)).first->second;
    };
    for (const auto &[m, c] : terms_) out = out + power(apow, a, m.i) * power(bpow, b, m.j) * c;
    out.vars_ = a.vars_;
    return out;
  }

  /// View as a univariate polynomial in `which`; throws if the other variable occurs.
  UPoly to_upoly(int which) const {
    std::vector<Rational> v(static_cast<std::size_t>(std::max(degree_in(which), 0)) + 1);
    for (const auto &[m, c] : terms_) {
      if ((which == 0 ? m.j : m.i) != 0) throw Error("polynomial is not univariate in " + vars_[static_cast<std::size_t>(which)]);
      v[static_cast<std::size_t>(which == 0 ? m.i : m.j)] = c;
    }
    return UPoly(std::move(v));
  }
  static RationalPoly from_upoly(const UPoly &u, int which, VarNames vars = {"x", "y"}) {
    RationalPoly p(std::move(vars));
    for (int k = 0; k <= u.degree(); ++k)
      if (which == 0)
        p.add_term(u.coeff(k), k, 0);
      else
        p.add_term(u.coeff(k), 0, k);
    return p;
  }

  RationalPoly operator-() const { return *this * Rational(-1); }
  friend RationalPoly operator+(const RationalPoly &a, const RationalPoly &b) {
    RationalPoly r = a;
    if (r.is_zero() && r.vars_ != b.vars_) r.vars_ = b.vars_;
    for (const auto &[m, c] : b.terms_) r.add_term(c, m.i, m.j);
    return r;
  }
  friend RationalPoly operator-(const RationalPoly &a, const RationalPoly &b) { return a + (-b); }
  friend RationalPoly operator*(const RationalPoly &a, const RationalPoly &b) {
    RationalPoly r(a.vars_);
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_) r.add_term(ca * cb, ma.i + mb.i, ma.j + mb.j);
    return r;
  }
  friend RationalPoly operator*(const RationalPoly &a, const Rational &s) {
    RationalPoly r(a.vars_);
    if (s == 0) return r;
    for (const auto &[m, c] : a.terms_) r.terms_[m] = c * s;
    return r;
  }
  friend RationalPoly operator*(const Rational &s, const RationalPoly &a) { return a * s; }
  /// Structural equality of the coefficient maps (variable names are labels only).
  friend bool operator==(const RationalPoly &a, const RationalPoly &b) { return a.terms_ == b.terms_; }

  RationalPoly pow(unsigned e) const {
    RationalPoly r(Rational(1), vars_);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  std::string to_string() const;

 private:
  Terms terms_;
  VarNames vars_{"x", "y"};
};

namespace detail {
inline std::string monomial_text(const VarNames &v, int i, int j) {
  std::string s;
  auto put = [&](const std::string &name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  put(v[0], i);
  put(v[1], j);
  return s;
}
}  // namespace detail

/// Canonical rendering: ascending total degree, "x - x^2*y + 1/2*x*y^2".
inline std::string RationalPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto &[m, c] : terms_) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string mono = detail::monomial_text(vars_, m.i, m.j);
    if (mono.empty())
      s += a.get_str();
    else if (a == 1)
      s += mono;
    else
      s += a.get_str() + "*" + mono;
  }
  return s;
}

inline std::ostream &operator<<(std::ostream &os, const RationalPoly &p) { return os << p.to_string(); }

/// Exact quotient num / den. Throws NotDivisible when a remainder survives.
inline RationalPoly divide_exact(const RationalPoly &num, const RationalPoly &den) {
  if (den.is_zero()) throw NotDivisible("division by the zero polynomial");
  RationalPoly rem = num, quo(num.vars());
  auto [lm, lc] = den.leading_term();
  while (!rem.is_zero()) {
    auto [rm, rc] = rem.leading_term();
    if (rm.i < lm.i || rm.j < lm.j)
      throw NotDivisible("(" + num.to_string() + ") is not divisible by (" + den.to_string() + ")");
    RationalPoly t = RationalPoly::term(rc / lc, rm.i - lm.i, rm.j - lm.j, num.vars());
    quo = quo + t;
    rem = rem - t * den;
  }
  if (!(quo * den == num)) throw NotDivisible("exact division failed re-multiplication check");
  return quo.with_vars(num.vars());
}

inline std::optional<RationalPoly> try_divide(const RationalPoly &num, const RationalPoly &den) {
  try {
    return divide_exact(num, den);
  } catch (const NotDivisible &) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string &text, VarNames vars, const std::map<std::string, Rational> &params)
      : s_(text), vars_(std::move(vars)), params_(params) {}

  RationalPoly parse() {
    RationalPoly r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalPoly expr() {
    RationalPoly r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RationalPoly term() {
    RationalPoly r = unary();
    for (;;) {
      skip();
      std::size_t at = pos_;
      if (eat('*')) {
        r = r * unary();
      } else if (eat('/')) {
        RationalPoly d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division only by a nonzero rational constant", at);
        r = r * Rational(Rational(1) / d.coeff(0, 0));
      } else {
        return r;
      }
    }
  }
  RationalPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalPoly power() {
    RationalPoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected nonnegative integer exponent", start);
      return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  RationalPoly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalPoly r = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
          (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+'))
        throw ParseError("non-rational literal (exponent notation)", start);
      std::string lit = s_.substr(start, pos_ - start);
      try {
        return RationalPoly(parse_rational(lit), vars_);
      } catch (const Error &) {
        throw ParseError("non-rational literal '" + lit + "'", start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == vars_[0]) return RationalPoly::var(0, vars_);
      if (id == vars_[1]) return RationalPoly::var(1, vars_);
      auto it = params_.find(id);
      if (it == params_.end()) throw ParseError("unbound name '" + id + "'", start);
      return RationalPoly(it->second, vars_);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string &s_;
  std::size_t pos_ = 0;
  VarNames vars_;
  const std::map<std::string, Rational> &params_;
};

}  // namespace detail

/// Grammar: sums/differences of products of factors; a factor is a rational
/// literal, one of the two variables, a bound parameter, or a parenthesized
/// expression, optionally raised to a nonnegative integer power with '^'.
/// Division is allowed only by a nonzero rational constant.
inline RationalPoly parse_poly(const std::string &text, const std::map<std::string, Rational> &params = {},
                               VarNames vars = {"x", "y"}) {
  return detail::PolyParser(text, std::move(vars), params).parse();
}

// ---------------------------------------------------------------------------
// Half-power polynomials
// ---------------------------------------------------------------------------

/// Side of the divisor a half-power substitution lives on.
enum class Branch { Positive, Negative };

inline int branch_sign(Branch b) { return b == Branch::Positive ? 1 : -1; }
inline const char *branch_name(Branch b) { return b == Branch::Positive ? "u>0" : "u<0"; }

/// Polynomial in t = |u|^(1/2) (any integer power, so half-integer powers of
/// |u|) and a second variable w. On the negative branch u = -t^2, so only the
/// real quantity (-u)^(1/2) is ever stored.
class HalfPowerPoly {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  HalfPowerPoly(Branch branch = Branch::Positive, VarNames vars = {"u", "w"}) : branch_(branch), vars_(std::move(vars)) {}

  Branch branch() const { return branch_; }
  const VarNames &vars() const { return vars_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Key is (power of t, power of w); t^k = |u|^(k/2).
  void add_term(const Rational &c, int half_exp, int j) {
    if (c == 0) return;
    auto &slot = terms_[{half_exp, j}];
    slot += c;
    if (slot == 0) terms_.erase({half_exp, j});
  }
  Rational coeff(int half_exp, int j) const {
    auto it = terms_.find({half_exp, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int min_half_exponent() const {
    int m = 0;
    bool first = true;
    for (const auto &[k, c] : terms_) {
      if (first || k.first < m) m = k.first;
      first = false;
    }
    return m;
  }

  friend HalfPowerPoly operator+(const HalfPowerPoly &a, const HalfPowerPoly &b) {
    HalfPowerPoly r = a;
    for (const auto &[k, c] : b.terms_) r.add_term(c, k.first, k.second);
    return r;
  }
  friend HalfPowerPoly operator-(const HalfPowerPoly &a, const HalfPowerPoly &b) { return a + b * Rational(-1); }
  friend HalfPowerPoly operator*(const HalfPowerPoly &a, const HalfPowerPoly &b) {
    HalfPowerPoly r(a.branch_, a.vars_);
    for (const auto &[ka, ca] : a.terms_)
      for (const auto &[kb, cb] : b.terms_) r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
  }
  friend HalfPowerPoly operator*(const HalfPowerPoly &a, const Rational &s) {
    HalfPowerPoly r(a.branch_, a.vars_);
    for (const auto &[k, c] : a.terms_) r.add_term(c * s, k.first, k.second);
    return r;
  }
  friend bool operator==(const HalfPowerPoly &a, const HalfPowerPoly &b) {
    return a.branch_ == b.branch_ && a.terms_ == b.terms_;
  }

  /// Multiply by t^half_exp * w^j.
  HalfPowerPoly shifted(int half_exp, int j = 0) const {
    HalfPowerPoly r(branch_, vars_);
    for (const auto &[k, c] : terms_) r.add_term(c, k.first + half_exp, k.second + j);
    return r;
  }

  /// Second variable w -> w * t^half_exp (exact, formal).
  HalfPowerPoly rescale_second(int half_exp, VarNames vars) const {
    HalfPowerPoly r(branch_, std::move(vars));
    for (const auto &[k, c] : terms_) r.add_term(c, k.first + half_exp * k.second, k.second);
    return r;
  }

  bool has_odd_residue() const {
    for (const auto &[k, c] : terms_)
      if (k.first % 2 != 0) return true;
    return false;
  }

  /// Lossless conversion when every power of t is even and nonnegative.
  std::optional<RationalPoly> to_rational_poly() const {
    RationalPoly p(vars_);
    for (const auto &[k, c] : terms_) {
      if (k.first < 0 || k.first % 2 != 0) return std::nullopt;
      int i = k.first / 2;
      Rational s = (branch_ == Branch::Negative && i % 2 != 0) ? Rational(-c) : c;
      p.add_term(s, i, k.second);
    }
    return p;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string base = branch_ == Branch::Positive ? vars_[0] : "(-" + vars_[0] + ")";
    std::string s;
    for (const auto &[k, c] : terms_) {
      bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string mono;
      if (k.first != 0) {
        mono = base;
        if (k.first != 2) mono += "^(" + (k.first % 2 == 0 ? std::to_string(k.first / 2) : std::to_string(k.first) + "/2") + ")";
      }
      if (k.second != 0) {
        if (!mono.empty()) mono += "*";
        mono += vars_[1] + (k.second > 1 ? "^" + std::to_string(k.second) : "");
      }
      if (mono.empty())
        s += a.get_str();
      else if (a == 1)
        s += mono;
      else
        s += a.get_str() + "*" + mono;
    }
    return s;
  }

 private:
  Branch branch_;
  VarNames vars_;
  Terms terms_;
};

/// Lift a polynomial in (u, z) into the half-power ring and substitute
/// z -> w * |u|^(half_exp/2); half_exp = 1 is the blow-up w = z/sqrt|u|,
/// half_exp = -1 its formal inverse.
inline HalfPowerPoly substitute_halfpower(const RationalPoly &poly, Branch branch, int half_exp = 1,
                                          VarNames vars = {"u", "w"}) {
  HalfPowerPoly r(branch, std::move(vars));
  int s = branch_sign(branch);
  for (const auto &[m, c] : poly.terms()) {
    Rational coeff = (s < 0 && m.i % 2 != 0) ? Rational(-c) : c;
    r.add_term(coeff, 2 * m.i + half_exp * m.j, m.j);
  }
  return r;
}

inline HalfPowerPoly lift(const RationalPoly &poly, Branch branch) {
  return substitute_halfpower(poly, branch, 0, poly.vars());
}

/// Exact division by a monomial u^a w^b in the half-power ring.
inline HalfPowerPoly divide_exact(const HalfPowerPoly &num, int u_power, int w_power = 0) {
  HalfPowerPoly r(num.branch(), num.vars());
  int s = branch_sign(num.branch());
  for (const auto &[k, c] : num.terms()) {
    if (k.second < w_power) throw NotDivisible("half-power polynomial not divisible by the requested monomial");
    Rational coeff = (s < 0 && u_power % 2 != 0) ? Rational(-c) : c;
    r.add_term(coeff, k.first - 2 * u_power, k.second - w_power);
  }
  if (r.min_half_exponent() < 0 && num.min_half_exponent() >= 0)
    throw NotDivisible("half-power polynomial not divisible by the requested monomial");
  return r;
}

}  // namespace dtk
