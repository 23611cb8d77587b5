#pragma once

// Dense univariate polynomials over Q: Euclidean arithmetic, Sturm sequences
// and real-root isolation.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dtk/rational.hpp"

namespace dtk {

class UPoly {
 public:
  UPoly() = default;
  UPoly(Rational c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  explicit UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly monomial(Rational c, int deg) {
    std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
    v[static_cast<std::size_t>(deg)] = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : Rational(0);
  }
  const Rational &lead() const { return coeffs_.back(); }
  const std::vector<Rational> &coeffs() const { return coeffs_; }

  Rational operator()(const Rational &t) const {
    Rational r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
    return r;
  }
  double eval(double t) const {
    double r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + it->get_d();
    return r;
  }

  UPoly derivative() const {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * static_cast<long>(i));
    return UPoly(std::move(v));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    Rational l = lead();
    for (auto &c : r.coeffs_) c /= l;
    return r;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
  }
  friend UPoly operator+(const UPoly &a, const UPoly &b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly &a, const UPoly &b) { return a + (-b); }
  friend UPoly operator*(const UPoly &a, const UPoly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UPoly(std::move(v));
  }
  friend bool operator==(const UPoly &a, const UPoly &b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws on division by zero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    UPoly rem = a;
    if (a.degree() < b.degree()) return {UPoly{}, rem};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      int shift = rem.degree() - b.degree();
      Rational f = rem.lead() / b.lead();
      q[static_cast<std::size_t>(shift)] = f;
      for (int i = 0; i <= b.degree(); ++i)
        rem.coeffs_[static_cast<std::size_t>(i + shift)] -= f * b.coeffs_[static_cast<std::size_t>(i)];
      rem.trim();
    }
    return {UPoly(std::move(q)), rem};
  }
  friend UPoly operator%(const UPoly &a, const UPoly &b) { return divmod(a, b).second; }
  friend UPoly operator/(const UPoly &a, const UPoly &b) { return divmod(a, b).first; }

  UPoly compose(const UPoly &inner) const {
    UPoly r;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * inner + UPoly(*it);
    return r;
  }

  std::string to_string(const std::string &var = "t") const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g (mod m).
inline std::pair<UPoly, UPoly> gcd_inverse(const UPoly &a, const UPoly &m) {
  UPoly r0 = m, r1 = a % m, s0, s1 = Rational(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {UPoly{}, UPoly{}};
  Rational l = r0.lead();
  return {r0.monic(), (s0 * UPoly(Rational(1) / l)) % m};
}

inline UPoly squarefree(const UPoly &p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

inline std::vector<UPoly> sturm_sequence(const UPoly &p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace detail {
inline int sign_changes(const std::vector<UPoly> &seq, const Rational &t) {
  int changes = 0, last = 0;
  for (const auto &s : seq) {
    int v = sgn(s(t));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}
}  // namespace detail

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_roots(const UPoly &p, const Rational &a, const Rational &b) {
  if (p.degree() <= 0) return 0;
  auto seq = sturm_sequence(squarefree(p));
  return detail::sign_changes(seq, a) - detail::sign_changes(seq, b);
}

/// Cauchy bound: every real root lies strictly inside (-B, B).
inline Rational root_bound(const UPoly &p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, dtk::abs(Rational(p.coeff(i) / p.lead())));
  return m + 1;
}

/// Rational roots of p (exact), found by the rational-root test on the
/// integer-normalized polynomial. Candidates are only enumerated when the
/// extreme coefficients are small enough for divisor listing.
inline std::vector<Rational> rational_roots(const UPoly &p) {
  std::vector<Rational> out;
  if (p.degree() < 1) return out;
  UPoly q = p;
  int low = 0;
  while (q.coeff(low) == 0) ++low;
  if (low > 0) out.push_back(0);
  if (q.degree() - low < 1) return out;
  Integer den = 1;
  for (const auto &c : q.coeffs()) den = lcm(den, c.get_den());
  Integer a0 = Rational(q.coeff(low) * den).get_num(), an = Rational(q.lead() * den).get_num();
  a0 = ::abs(a0);
  an = ::abs(an);
  if (a0 > 1000000 || an > 1000000) return out;
  auto divisors = [](const Integer &n) {
    std::vector<Integer> d;
    for (Integer i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        d.push_back(i);
        if (i * i != n) d.push_back(n / i);
      }
    return d;
  };
  std::vector<Rational> cands;
  for (const auto &num : divisors(a0))
    for (const auto &dd : divisors(an)) {
      Rational r(num, dd);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto &r : cands)
    if (q(r) == 0) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

/// Disjoint isolating intervals (lo, hi] for the distinct real roots of p,
/// sorted increasingly. Rational roots come back as degenerate lo == hi.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly &p) {
  std::vector<std::pair<Rational, Rational>> out;
  UPoly sf = squarefree(p);
  if (sf.degree() < 1) return out;
  Rational b = root_bound(sf);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count_roots(sf, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      if (sf(hi) == 0)
        out.emplace_back(hi, hi);
      else
        out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  std::sort(out.begin(), out.end(), [](const auto &l, const auto &r) { return l.second < r.second; });
  return out;
}

inline std::string UPoly::to_string(const std::string &var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (i == 0 || a != 1) s += a.get_str() + (i > 0 ? "*" : "");
    if (i > 0) s += var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s;
}

inline std::ostream &operator<<(std::ostream &os, const UPoly &p) { return os << p.to_string(); }

}  // namespace dtk
