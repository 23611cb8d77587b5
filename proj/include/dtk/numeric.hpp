#pragma once

// Floating-point layer: DOPRI5 trajectories, conservation checks, separatrix
// tracing, samples of the curve (x - y)/(x + y) e^{y^2} = 1 and the
// Vandermonde algebraicity probe.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dtk/darboux.hpp"
#include "dtk/lineage.hpp"

namespace dtk {

struct StepUnderflow : Error {
  using Error::Error;
};
struct NotASaddle : Error {
  using Error::Error;
};
struct IllConditioned : Error {
  using Error::Error;
};

/// A polynomial flattened for fast double evaluation.
class FastPoly {
 public:
  FastPoly() = default;
  explicit FastPoly(const RationalPoly &p) {
    for (const auto &[m, c] : p.terms()) terms_.push_back({m.i, m.j, Rational(c).get_d()});
  }
  double operator()(double x, double y) const {
    double s = 0;
    for (const auto &t : terms_) s += t.c * ipow(x, t.i) * ipow(y, t.j);
    return s;
  }

 private:
  struct Term {
    int i, j;
    double c;
  };
  static double ipow(double b, int e) {
    double r = 1;
    for (; e > 0; --e) r *= b;
    return r;
  }
  std::vector<Term> terms_;
};

struct FastField {
  FastPoly p, q;
  explicit FastField(const PlanarSystem &sys) : p(sys.p), q(sys.q) {}
  std::array<double, 2> operator()(double x, double y) const { return {p(x, y), q(x, y)}; }
};

struct Sample {
  double t, x, y;
};

enum class Termination { TimeLimit, Escape, Equilibrium, Stopped };

inline const char *termination_name(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "time limit";
    case Termination::Escape: return "escape radius";
    case Termination::Equilibrium: return "equilibrium approach";
    case Termination::Stopped: return "stop condition";
  }
  return "?";
}

struct Trajectory {
  std::vector<Sample> samples;
  int steps = 0, rejected = 0;
  /// Largest accepted normalized error estimate (<= 1 by construction).
  double max_error = 0;
  Termination reason = Termination::TimeLimit;
  /// Samples mapped back to the original plane (separatrix tracing only).
  std::vector<std::pair<double, double>> plane;
};

struct IntegratorOptions {
  double tol = 1e-10;
  double escape_radius = 1e6;
  double min_speed = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 1000000;
  /// Checked after each accepted step; true ends the run.
  std::function<bool(double, double)> stop;

  static IntegratorOptions make(double tol, double escape_radius = 1e6) {
    IntegratorOptions o;
    o.tol = tol;
    o.escape_radius = escape_radius;
    return o;
  }
};

/// Dormand-Prince 5(4) from `start` over [t0, t1] (t1 < t0 runs backwards).
inline Trajectory integrate_trajectory(const PlanarSystem &sys, std::pair<double, double> start, double t0, double t1,
                                       const IntegratorOptions &opt = {}) {
  if (!(opt.tol > 0)) throw Error("integrate_trajectory: tol must be positive");
  if (!std::isfinite(start.first) || !std::isfinite(start.second)) throw Error("integrate_trajectory: start is not finite");
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  FastField f(sys);
  Trajectory tr;
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0, x = start.first, y = start.second;
  tr.samples.push_back({t, x, y});
  auto k1 = f(x, y);
  double h = dir * std::min(std::abs(t1 - t0), std::min(opt.max_step, 1e-3));
  if (h == 0) return tr;
  while (dir * (t1 - t) > 0) {
    if (std::hypot(k1[0], k1[1]) < opt.min_speed) {
      tr.reason = Termination::Equilibrium;
      return tr;
    }
    if (tr.steps + tr.rejected >= opt.max_steps) throw StepUnderflow("step budget exhausted near (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    if (dir * (t + h - t1) > 0) h = t1 - t;
    auto k2 = f(x + h * a21 * k1[0], y + h * a21 * k1[1]);
    auto k3 = f(x + h * (a31 * k1[0] + a32 * k2[0]), y + h * (a31 * k1[1] + a32 * k2[1]));
    auto k4 = f(x + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]), y + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]));
    auto k5 = f(x + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                y + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]));
    auto k6 = f(x + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                y + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]));
    double xn = x + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]);
    double yn = y + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1]);
    auto k7 = f(xn, yn);
    double ex = h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
    double ey = h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);
    double sx = opt.tol + opt.tol * std::max(std::abs(x), std::abs(xn));
    double sy = opt.tol + opt.tol * std::max(std::abs(y), std::abs(yn));
    double err = std::max(std::abs(ex) / sx, std::abs(ey) / sy);
    if (!std::isfinite(err)) err = 1e10;
    double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1) {
      t += h;
      x = xn;
      y = yn;
      k1 = k7;
      ++tr.steps;
      tr.max_error = std::max(tr.max_error, err);
      tr.samples.push_back({t, x, y});
      if (std::hypot(x, y) > opt.escape_radius) {
        tr.reason = Termination::Escape;
        return tr;
      }
      if (opt.stop && opt.stop(x, y)) {
        tr.reason = Termination::Stopped;
        return tr;
      }
      h = dir * std::min(std::abs(h) * fac, opt.max_step);
    } else {
      ++tr.rejected;
      h *= std::max(fac, 0.1);
    }
    if (t + h == t)
      throw StepUnderflow("step size underflow at t = " + std::to_string(t) + ", (x, y) = (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
  }
  return tr;
}

inline void write_csv(std::ostream &os, const Trajectory &tr) {
  os << "t,x,y\n";
  os.precision(17);
  for (const auto &s : tr.samples) os << s.t << ',' << s.x << ',' << s.y << '\n';
}

struct ConstancyReport {
  bool pass = false;
  double max_drift = 0;
  double tol = 0;
  std::vector<double> drift;
  std::vector<std::pair<double, double>> starts;
};

struct ConstancyOptions {
  unsigned long seed = 20240601;
  double t_span = 1.0;
  /// Starts are uniform in [-box, box]^2. Near |y| = 2 the p = 0 orbits
  /// close in on x = y by e^{y(1)^2 - y(0)^2} ~ 1e10 within t = 1, and H is no
  /// longer resolvable from double coordinates.
  double box = 1.0;
  /// Minimum |L| at the start for factors with negative exponents, and |H0|.
  double guard = 0.05;
  IntegratorOptions integrator = IntegratorOptions::make(1e-12, 1e3);
};

/// Max relative drift of H along `trials` seeded trajectories.
inline ConstancyReport check_integral_constancy(const PlanarSystem &sys, const FirstIntegral &h, int trials, double tol,
                                                const ConstancyOptions &opt = {}) {
  ConstancyReport rep;
  rep.tol = tol;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-opt.box, opt.box);
  auto guarded = [&](double x, double y) {
    for (const auto &[o, a] : h.factors)
      if (a != 0 && o.kind == DarbouxKind::AlgebraicCurve && std::abs(o.body.eval(x, y)) < opt.guard) return false;
    return true;
  };
  int attempts = 0;
  while (static_cast<int>(rep.drift.size()) < trials) {
    if (++attempts > 1000 * std::max(trials, 1)) throw Error("check_integral_constancy: could not place starting points");
    double x = u(rng), y = u(rng);
    if (!guarded(x, y)) continue;
    double h0;
    try {
      h0 = evaluate_integral(h, x, y);
    } catch (const PoleOrBranch &) {
      continue;
    }
    if (std::abs(h0) < opt.guard) continue;
    Trajectory tr = integrate_trajectory(sys, {x, y}, 0, opt.t_span, opt.integrator);
    double d = 0;
    for (const auto &s : tr.samples) {
      try {
        d = std::max(d, std::abs(evaluate_integral(h, s.x, s.y) - h0) / std::abs(h0));
      } catch (const PoleOrBranch &) {
        d = std::numeric_limits<double>::infinity();
      }
    }
    rep.starts.emplace_back(x, y);
    rep.drift.push_back(d);
    rep.max_drift = std::max(rep.max_drift, d);
  }
  rep.pass = rep.max_drift <= tol;
  return rep;
}

enum class SeparatrixKind { Unstable, Stable };

struct SeparatrixOptions {
  double eps = 1e-6;
  double length = 50;
  IntegratorOptions integrator = IntegratorOptions::make(1e-12);
  /// Evaluated on the point mapped to the original plane.
  std::function<bool(double, double)> stop_in_plane;
};

/// Separatrix of a hyperbolic saddle of `sys` (any chart of the lineage).
/// The eigenvector is oriented so its first nonzero component is positive;
/// side = -1 takes the opposite branch. The time direction follows the chart.
inline Trajectory trace_separatrix(const PlanarSystem &sys, std::pair<double, double> saddle, SeparatrixKind kind, int side,
                                   const SeparatrixOptions &opt = {}) {
  auto [x0, y0] = saddle;
  Eigen::Matrix2d j;
  j << sys.p.derivative(0).eval(x0, y0), sys.p.derivative(1).eval(x0, y0), sys.q.derivative(0).eval(x0, y0),
      sys.q.derivative(1).eval(x0, y0);
  if (!(j.determinant() < 0)) throw NotASaddle("Jacobian determinant " + std::to_string(j.determinant()) + " is not negative");
  Eigen::EigenSolver<Eigen::Matrix2d> es(j);
  Eigen::Vector2d lam = es.eigenvalues().real();
  int idx = kind == SeparatrixKind::Unstable ? (lam(0) > 0 ? 0 : 1) : (lam(0) < 0 ? 0 : 1);
  Eigen::Vector2d v = es.eigenvectors().col(idx).real().normalized();
  double lead = std::abs(v(0)) > 1e-14 ? v(0) : v(1);
  if (lead < 0) v = -v;
  v *= side >= 0 ? 1.0 : -1.0;
  IntegratorOptions io = opt.integrator;
  if (opt.stop_in_plane) {
    auto stop = opt.stop_in_plane;
    io.stop = [&sys, stop](double a, double b) {
      auto [px, py] = map_to_plane(sys, {a, b});
      return stop(px, py);
    };
  }
  double t1 = kind == SeparatrixKind::Unstable ? opt.length : -opt.length;
  Trajectory tr = integrate_trajectory(sys, {x0 + opt.eps * v(0), y0 + opt.eps * v(1)}, 0, t1, io);
  for (const auto &s : tr.samples) tr.plane.push_back(map_to_plane(sys, {s.x, s.y}));
  return tr;
}

/// Working precision of the algebraicity probe: 80 decimal digits.
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80, boost::multiprecision::allocate_stack>, boost::multiprecision::et_off>;

/// x on the curve (x - y)/(x + y) e^{y^2} = 1 for y > 0.
template <class T>
T gamma_x(const T &y) {
  using std::expm1;
  T e = expm1(y * y);
  return y * (2 + e) / e;
}

/// Points on a curve, in doubles and at probe precision.
struct CurveSample {
  std::vector<std::pair<double, double>> points;
  std::vector<std::pair<MpReal, MpReal>> precise;
  std::string parametrization;
};
using GammaSample = CurveSample;

namespace detail {

inline std::vector<MpReal> uniform_grid(int count, double y_min, double y_max) {
  std::vector<MpReal> out;
  MpReal lo(y_min), hi(y_max);
  for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

template <class F>
CurveSample sample_curve(int count, double y_min, double y_max, F x_of_y, std::string name) {
  CurveSample c;
  c.parametrization = std::move(name);
  for (const MpReal &y : uniform_grid(count, y_min, y_max)) {
    MpReal x = x_of_y(y);
    c.precise.emplace_back(x, y);
    c.points.emplace_back(static_cast<double>(x), static_cast<double>(y));
  }
  return c;
}

}  // namespace detail

/// `count` points with y evenly spaced over [y_min, y_max].
inline GammaSample sample_gamma(int count, double y_min, double y_max) {
  if (!(0 < y_min && y_min < y_max)) throw Error("sample_gamma: need 0 < y_min < y_max");
  if (count < 1) throw Error("sample_gamma: count must be positive");
  GammaSample g = detail::sample_curve(count, y_min, y_max, [](const MpReal &y) { return gamma_x(y); },
                                       "x = y (e^{y^2} + 1)/(e^{y^2} - 1), y uniform");
  for (const auto &[x, y] : g.points) {
    double r = (x - y) / (x + y) * std::exp(y * y) - 1;
    if (std::abs(r) > 1e-12) throw Error("sample_gamma: residual " + std::to_string(r) + " at y = " + std::to_string(y));
  }
  return g;
}

/// Points on the level set (x - y)(1 + y^2) = x + y, y > 0, i.e. x y = 2 + y^2.
inline CurveSample algebraic_control_sample(int count, double y_min, double y_max) {
  if (!(0 < y_min && y_min < y_max)) throw Error("algebraic_control_sample: need 0 < y_min < y_max");
  return detail::sample_curve(count, y_min, y_max, [](const MpReal &y) { return (2 + y * y) / y; },
                              "x = (2 + y^2)/y, y uniform");
}

struct ProbeRow {
  int degree = 0;
  int monomials = 0;
  /// Smallest singular value of the column-normalized Vandermonde matrix.
  double sigma_min = 0;
  /// Median |f| / |grad f| over held-out points, f the singular vector fitted
  /// on the training points (a distance-like fit error, units of the data).
  double holdout = 0;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  int points = 0;
  /// Decimal digits carried by the arithmetic (16 for doubles).
  int digits = 16;
  double min_sigma() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto &r : rows) m = std::min(m, r.sigma_min);
    return m;
  }
  double sigma_at(int degree) const {
    for (const auto &r : rows)
      if (r.degree == degree) return r.sigma_min;
    throw Error("probe report has no row for degree " + std::to_string(degree));
  }
};

namespace detail {

template <class T>
ProbeReport probe(const std::vector<std::pair<T, T>> &pts, int maxdeg) {
  using std::abs, std::sqrt;
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  if (maxdeg < 1) throw Error("algebraicity_probe: maxdeg must be at least 1");
  const int ncols = (maxdeg + 1) * (maxdeg + 2) / 2;
  const int need = 3 * ncols;
  if (static_cast<int>(pts.size()) < need)
    throw IllConditioned("algebraicity_probe: " + std::to_string(pts.size()) + " points for " + std::to_string(ncols) +
                         " monomials; need at least " + std::to_string(need) + " (widen the sample)");
  T xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (const auto &[x, y] : pts) {
    xmin = std::min(xmin, x), xmax = std::max(xmax, x), ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  T s = std::max(xmax - xmin, ymax - ymin) / 2;
  if (s < T(1e-9)) throw IllConditioned("algebraicity_probe: points have no spread");
  // Affine map of the bounding box into [-1, 1]^2; algebraicity and degree are unchanged.
  T cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  std::vector<std::pair<T, T>> train, hold;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::pair<T, T> q{(pts[i].first - cx) / s, (pts[i].second - cy) / s};
    (i % 3 == 2 ? hold : train).push_back(q);
  }
  ProbeReport rep;
  rep.points = static_cast<int>(pts.size());
  rep.digits = std::numeric_limits<T>::digits10;
  // Monomials ordered by degree, so each degree uses a leading block of columns.
  // With unpivoted QR, A[:, :M] = Q[:, :M] R[:M, :M], and the singular values
  // and right vectors of that block come from the small triangle alone.
  std::vector<std::pair<int, int>> m;
  for (int d = 0; d <= maxdeg; ++d)
    for (int i = d; i >= 0; --i) m.emplace_back(i, d - i);
  auto powers = [maxdeg](const T &v) {
    std::vector<T> pw(static_cast<std::size_t>(maxdeg) + 1, T(1));
    for (int k = 1; k <= maxdeg; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k) - 1] * v;
    return pw;
  };
  const auto N = static_cast<Eigen::Index>(m.size());
  Mat a(static_cast<Eigen::Index>(train.size()), N);
  for (std::size_t r = 0; r < train.size(); ++r) {
    auto px = powers(train[r].first), py = powers(train[r].second);
    for (Eigen::Index c = 0; c < N; ++c) a(static_cast<Eigen::Index>(r), c) = px[static_cast<std::size_t>(m[c].first)] * py[static_cast<std::size_t>(m[c].second)];
  }
  std::vector<T> norms;
  for (Eigen::Index c = 0; c < N; ++c) {
    norms.push_back(a.col(c).norm());
    a.col(c) /= norms.back();
  }
  Eigen::HouseholderQR<Mat> qr(a);
  const Mat r_full = qr.matrixQR().topRows(N).template triangularView<Eigen::Upper>();
  std::vector<std::vector<T>> hx, hy;
  for (const auto &[x, y] : hold) hx.push_back(powers(x)), hy.push_back(powers(y));
  for (int n = 1; n <= maxdeg; ++n) {
    const auto M = static_cast<Eigen::Index>((n + 1) * (n + 2) / 2);
    Eigen::JacobiSVD<Mat> svd(r_full.topLeftCorner(M, M), Eigen::ComputeFullV);
    std::vector<T> coef;
    for (Eigen::Index c = 0; c < M; ++c) coef.push_back(svd.matrixV()(c, M - 1) / norms[static_cast<std::size_t>(c)]);
    std::vector<T> res;
    for (std::size_t h = 0; h < hold.size(); ++h) {
      const auto &px = hx[h], &py = hy[h];
      T f = 0, fx = 0, fy = 0;
      for (Eigen::Index c = 0; c < M; ++c) {
        auto [i, j] = m[static_cast<std::size_t>(c)];
        const T &k = coef[static_cast<std::size_t>(c)];
        f += k * px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j)];
        if (i > 0) fx += k * i * px[static_cast<std::size_t>(i) - 1] * py[static_cast<std::size_t>(j)];
        if (j > 0) fy += k * j * px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j) - 1];
      }
      T g = sqrt(fx * fx + fy * fy);
      res.push_back(g > 0 ? T(abs(f) / g) : T(std::numeric_limits<double>::infinity()));
    }
    std::nth_element(res.begin(), res.begin() + static_cast<long>(res.size() / 2), res.end());
    rep.rows.push_back({n, static_cast<int>(M), static_cast<double>(svd.singularValues()(M - 1)),
                        static_cast<double>(res[res.size() / 2] * s)});
  }
  return rep;
}

}  // namespace detail

/// For each degree 1..maxdeg, how well a nonzero polynomial of that degree
/// can vanish on the points (double arithmetic). Every third point is held
/// out of the fit.
inline ProbeReport algebraicity_probe(const std::vector<std::pair<double, double>> &pts, int maxdeg) {
  return detail::probe(pts, maxdeg);
}

/// Same, in MpReal arithmetic on the sample's precise points.
inline ProbeReport algebraicity_probe(const CurveSample &sample, int maxdeg) { return detail::probe(sample.precise, maxdeg); }

/// Max distance between two polylines after both are resampled at `stations`
/// equal fractions of their arclength.
inline double arclength_distance(const std::vector<std::pair<double, double>> &a, const std::vector<std::pair<double, double>> &b,
                                 int stations = 400) {
  auto resample = [stations](const std::vector<std::pair<double, double>> &c) {
    std::vector<double> cum{0};
    for (std::size_t i = 1; i < c.size(); ++i)
      cum.push_back(cum.back() + std::hypot(c[i].first - c[i - 1].first, c[i].second - c[i - 1].second));
    std::vector<std::pair<double, double>> out;
    std::size_t k = 1;
    for (int s = 0; s <= stations; ++s) {
      double target = cum.back() * s / stations;
      while (k + 1 < c.size() && cum[k] < target) ++k;
      double seg = cum[k] - cum[k - 1], w = seg > 0 ? (target - cum[k - 1]) / seg : 0;
      w = std::clamp(w, 0.0, 1.0);
      out.emplace_back(c[k - 1].first + w * (c[k].first - c[k - 1].first), c[k - 1].second + w * (c[k].second - c[k - 1].second));
    }
    return out;
  };
  if (a.size() < 2 || b.size() < 2) throw Error("arclength_distance: need at least two points per curve");
  auto ra = resample(a), rb = resample(b);
  double d = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) d = std::max(d, std::hypot(ra[i].first - rb[i].first, ra[i].second - rb[i].second));
  return d;
}

/// Portion of a polyline with lo <= y <= hi, endpoints interpolated onto the bounds.
inline std::vector<std::pair<double, double>> clip_y(const std::vector<std::pair<double, double>> &c, double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  auto lerp = [](std::pair<double, double> p, std::pair<double, double> q, double y) {
    double w = (y - p.second) / (q.second - p.second);
    return std::pair<double, double>{p.first + w * (q.first - p.first), y};
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool in = c[i].second >= lo && c[i].second <= hi;
    if (i > 0) {
      const auto &p = c[i - 1], &q = c[i];
      for (double b : {lo, hi})
        if ((p.second - b) * (q.second - b) < 0) out.push_back(lerp(p, q, b));
    }
    if (in) out.push_back(c[i]);
  }
  return out;
}

}  // namespace dtk
