#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dtk {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base of every error the toolkit throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational &q) { return sgn(q); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact rational from an integer, fraction ("-3/4") or finite decimal ("0.125")
/// literal. Anything else (exponents, "pi", "sqrt(2)") is rejected.
inline Rational parse_rational(const std::string &text) {
  std::string s = text;
  if (s.empty()) throw Error("empty rational literal");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  auto all_digits = [](const std::string &t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw Error("not a rational literal: " + text);
    Integer den(b, 10);
    if (den == 0) throw Error("zero denominator in literal: " + text);
    out = Rational(Integer(a, 10), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string a = body.substr(0, dot), b = body.substr(dot + 1);
    if (a.empty()) a = "0";
    if (!all_digits(a) || (!b.empty() && !all_digits(b))) throw Error("not a rational literal: " + text);
    Integer den = 1;
    for (std::size_t i = 0; i < b.size(); ++i) den *= 10;
    out = Rational(Integer(a + b, 10), den);
  } else {
    if (!all_digits(body)) throw Error("not a rational literal: " + text);
    out = Rational(Integer(body, 10));
  }
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

inline std::string to_string(const Rational &q) { return q.get_str(); }

inline Rational rpow(const Rational &base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline Rational abs(const Rational &q) { return q < 0 ? Rational(-q) : q; }

}  // namespace dtk
