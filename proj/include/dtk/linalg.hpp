#pragma once

// Exact linear algebra over Q.

#include <vector>

#include "dtk/rational.hpp"

namespace dtk {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Basis of {v : A v = 0}; each vector scaled so its last nonzero entry is 1.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t ncols) {
  std::vector<int> pivot_of_col(ncols, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto &e : a[row]) e *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < ncols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_of_col[c] = static_cast<int>(row);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rational> v(ncols);
    v[f] = 1;
    for (std::size_t c = 0; c < ncols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -a[static_cast<std::size_t>(pivot_of_col[c])][f];
    Rational last = 0;
    for (const auto &e : v)
      if (e != 0) last = e;
    for (auto &e : v) e /= last;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dtk
