#pragma once

// Real algebraic numbers (defining polynomial + isolating interval) and
// arithmetic in Q(theta) for a real algebraic theta. Signs are certified by
// Sturm counts; zero tests are exact.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtk/poly.hpp"
#include "dtk/upoly.hpp"

namespace dtk {

namespace detail {

inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Sylvester resultant of two coefficient vectors (ascending) taken with
/// formal degrees size()-1.
inline Rational sylvester(const std::vector<Rational> &a, const std::vector<Rational> &b) {
  const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b[static_cast<std::size_t>(n - k)];
  return determinant(std::move(s));
}

/// Newton interpolation through (xs[k], ys[k]).
inline UPoly interpolate(const std::vector<Rational> &xs, std::vector<Rational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) {
      ys[k] = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - level]);
      if (k == level) break;
    }
  UPoly r;
  for (std::size_t k = n; k-- > 0;) r = r * (UPoly::x() - UPoly(xs[k])) + UPoly(ys[k]);
  return r;
}

}  // namespace detail

/// Res_{elim}(a, b) as a univariate polynomial in the other variable, computed
/// by exact evaluation at integer nodes and interpolation.
inline UPoly resultant(const RationalPoly &a, const RationalPoly &b, int elim) {
  const int keep = 1 - elim;
  const int m = std::max(a.degree_in(elim), 0), n = std::max(b.degree_in(elim), 0);
  const int bound = m * std::max(b.degree_in(keep), 0) + n * std::max(a.degree_in(keep), 0);
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    Rational t = (k % 2 == 0) ? Rational(k / 2) : Rational(-(k + 1) / 2);
    RationalPoly as = a.partial_eval(keep, t), bs = b.partial_eval(keep, t);
    std::vector<Rational> ca(static_cast<std::size_t>(m) + 1), cb(static_cast<std::size_t>(n) + 1);
    for (int e = 0; e <= m; ++e) ca[static_cast<std::size_t>(e)] = elim == 0 ? as.coeff(e, 0) : as.coeff(0, e);
    for (int e = 0; e <= n; ++e) cb[static_cast<std::size_t>(e)] = elim == 0 ? bs.coeff(e, 0) : bs.coeff(0, e);
    xs.push_back(t);
    ys.push_back(detail::sylvester(ca, cb));
  }
  return detail::interpolate(xs, ys);
}

/// Enclosure of h over the rational interval [lo, hi].
inline std::pair<Rational, Rational> interval_eval(const UPoly &h, const Rational &lo, const Rational &hi) {
  Rational a = 0, b = 0;
  for (int k = h.degree(); k >= 0; --k) {
    Rational p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
    Rational mn = std::min({p1, p2, p3, p4}), mx = std::max({p1, p2, p3, p4});
    a = mn + h.coeff(k);
    b = mx + h.coeff(k);
  }
  return {a, b};
}

/// A real algebraic number: the unique root of a squarefree defining
/// polynomial inside (lo, hi], or an exact rational (lo == hi).
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  AlgebraicNumber(const Rational &q) : def_(UPoly(std::vector<Rational>{-q, 1})), lo_(q), hi_(q) {}
  AlgebraicNumber(UPoly def, Rational lo, Rational hi) : def_(squarefree(def)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (def_.degree() == 1) lo_ = hi_ = -def_.coeff(0) / def_.coeff(1);
    if (lo_ != hi_ && count_roots(def_, lo_, hi_) != 1) throw Error("interval does not isolate a single root");
  }

  const UPoly &defining_poly() const { return def_; }
  Rational lower() const { return lo_; }
  Rational upper() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  Rational rational_value() const {
    if (!is_rational()) throw Error("algebraic number is irrational");
    return lo_;
  }

  /// Shrink the isolating interval below the given width.
  void refine(const Rational &width) const {
    while (hi_ - lo_ > width) bisect();
  }
  double approx() const {
    if (is_rational()) return lo_.get_d();
    refine(Rational(1, 1) / Rational(Integer("1000000000000000000000")));
    return Rational((lo_ + hi_) / 2).get_d();
  }

  /// Sign of h(theta), exact.
  int sign_of(const UPoly &h) const {
    if (is_rational()) return sgn(h(lo_));
    UPoly r = h % def_;
    if (r.degree() <= 0) return r.is_zero() ? 0 : sgn(r.coeff(0));
    UPoly g = gcd(def_, r);
    if (g.degree() >= 1 && count_roots(g, lo_, hi_) == 1) return 0;
    while (count_roots(r, lo_, hi_) != 0) bisect();
    return sgn(r(hi_));
  }
  bool is_root_of(const UPoly &h) const { return sign_of(h) == 0; }

  /// Replace the defining polynomial by the factor of it that carries theta.
  void restrict_to(const UPoly &factor) const {
    UPoly g = gcd(def_, factor);
    if (g.degree() < 1) return;
    UPoly other = def_ / g;
    if (!is_rational() && count_roots(g, lo_, hi_) == 1)
      def_ = g;
    else if (other.degree() >= 1)
      def_ = other.monic();
    if (def_.degree() == 1) lo_ = hi_ = -def_.coeff(0) / def_.coeff(1);
    sturm_.clear();
  }

  /// Ordering of distinct real algebraic numbers (0 when equal).
  friend int compare(const AlgebraicNumber &a, const AlgebraicNumber &b) {
    if (a.is_rational() && b.is_rational()) return cmp(a.lo_, b.lo_);
    if (a.is_rational()) return -b.sign_of(UPoly(std::vector<Rational>{-a.lo_, 1}));
    if (b.is_rational()) return a.sign_of(UPoly(std::vector<Rational>{-b.lo_, 1}));
    if (gcd(a.def_, b.def_).degree() >= 1) {
      UPoly g = gcd(a.def_, b.def_);
      if (count_roots(g, a.lo_, a.hi_) == 1 && count_roots(g, b.lo_, b.hi_) == 1) {
        Rational lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
        if (lo < hi && count_roots(g, lo, hi) == 1) return 0;
      }
    }
    while (!(a.hi_ <= b.lo_ || b.hi_ <= a.lo_)) {
      a.bisect();
      b.bisect();
    }
    return a.hi_ <= b.lo_ ? -1 : 1;
  }

  /// Readable closed form for rationals and roots of quadratics.
  std::string to_string() const {
    if (is_rational()) return lo_.get_str();
    if (def_.degree() == 2) {
      Rational a = def_.coeff(2), b = def_.coeff(1), c = def_.coeff(0);
      Rational centre = -b / (2 * a), rad = (b * b - 4 * a * c) / (4 * a * a);
      bool plus = sign_of(UPoly(std::vector<Rational>{-centre, 1})) > 0;
      std::string root = "sqrt(" + rad.get_str() + ")";
      if (centre == 0) return (plus ? "" : "-") + root;
      return centre.get_str() + (plus ? " + " : " - ") + root;
    }
    return "root(" + def_.to_string("t") + ", (" + lo_.get_str() + ", " + hi_.get_str() + "])";
  }

 private:
  void bisect() const {
    if (is_rational()) return;
    if (sturm_.empty()) sturm_ = sturm_sequence(def_);
    Rational mid = (lo_ + hi_) / 2;
    if (def_(mid) == 0) {
      lo_ = hi_ = mid;
      return;
    }
    if (detail::sign_changes(sturm_, lo_) - detail::sign_changes(sturm_, mid) == 1)
      hi_ = mid;
    else
      lo_ = mid;
  }

  // Refinement and factor restriction never change the number itself.
  mutable UPoly def_;
  mutable Rational lo_, hi_;
  mutable std::vector<UPoly> sturm_;
};

/// All distinct real roots of p, increasing. Rational roots are split off
/// exactly; the remaining roots share the cofactor as defining polynomial.
inline std::vector<AlgebraicNumber> real_roots(const UPoly &p) {
  std::vector<AlgebraicNumber> out;
  UPoly sf = squarefree(p);
  if (sf.degree() < 1) return out;
  UPoly rest = sf;
  for (const auto &r : rational_roots(sf)) {
    out.emplace_back(r);
    rest = rest / UPoly(std::vector<Rational>{-r, 1});
  }
  if (rest.degree() >= 1)
    for (const auto &[lo, hi] : isolate_real_roots(rest)) out.emplace_back(rest, lo, hi);
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return compare(a, b) < 0; });
  return out;
}

/// Arithmetic in Q(theta); elements are polynomials in theta reduced modulo
/// the (current) defining polynomial of theta.
class NumberField {
 public:
  using Elem = UPoly;

  explicit NumberField(AlgebraicNumber gen) : gen_(std::make_shared<AlgebraicNumber>(std::move(gen))) {}
  NumberField() : NumberField(AlgebraicNumber(Rational(0))) {}

  const AlgebraicNumber &generator() const { return *gen_; }
  bool is_rational_field() const { return gen_->defining_poly().degree() == 1; }

  Elem reduce(const Elem &a) const { return a % gen_->defining_poly(); }
  Elem mul(const Elem &a, const Elem &b) const { return reduce(a * b); }
  int sign(const Elem &a) const { return gen_->sign_of(a); }
  bool is_zero(const Elem &a) const { return sign(a) == 0; }

  /// Inverse of a nonzero element. A non-trivial gcd with the defining
  /// polynomial splits it; theta then moves to the factor it is a root of.
  Elem inverse(const Elem &a) const {
    if (is_zero(a)) throw Error("inverse of zero in number field");
    auto [g, s] = gcd_inverse(reduce(a), gen_->defining_poly());
    if (g.degree() >= 1) {
      gen_->restrict_to(gen_->defining_poly() / g);
      std::tie(g, s) = gcd_inverse(reduce(a), gen_->defining_poly());
    }
    return s;
  }

  /// Exact value as a rational if the element is constant modulo theta's
  /// defining polynomial.
  std::optional<Rational> as_rational(const Elem &a) const {
    Elem r = reduce(a);
    if (r.degree() <= 0) return r.coeff(0);
    if (is_rational_field()) return r(gen_->rational_value());
    return std::nullopt;
  }

  double to_double(const Elem &a) const {
    if (auto q = as_rational(a)) return q->get_d();
    gen_->refine(Rational(1, 1) / Rational(Integer("1000000000000000000000000")));
    auto [lo, hi] = interval_eval(reduce(a), gen_->lower(), gen_->upper());
    return Rational((lo + hi) / 2).get_d();
  }

  /// The element as a standalone real algebraic number with its own
  /// defining polynomial, obtained from Res_X(def(X), T - a(X)).
  AlgebraicNumber to_algebraic(const Elem &a) const {
    if (auto q = as_rational(a)) return AlgebraicNumber(*q);
    Elem r = reduce(a);
    RationalPoly def = RationalPoly::from_upoly(gen_->defining_poly(), 0, {"X", "T"});
    RationalPoly shift = RationalPoly::var(1, {"X", "T"}) - RationalPoly::from_upoly(r, 0, {"X", "T"});
    UPoly res = resultant(def, shift, 0);
    auto cands = real_roots(res);
    for (;;) {
      auto [lo, hi] = interval_eval(r, gen_->lower(), gen_->upper());
      std::vector<const AlgebraicNumber *> hits;
      for (const auto &c : cands)
        if (!(c.upper() < lo || c.lower() > hi)) hits.push_back(&c);
      if (hits.size() == 1) return *hits.front();
      if (hits.empty()) throw Error("no candidate root matched element enclosure");
      gen_->refine((gen_->upper() - gen_->lower()) / 4);
      for (const auto *h : hits) h->refine((h->upper() - h->lower()) / 4);
    }
  }

 private:
  std::shared_ptr<AlgebraicNumber> gen_;
};

}  // namespace dtk
