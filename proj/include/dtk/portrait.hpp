#pragma once

// Poincare-disk portrait as SVG 1.1: boundary, equilibrium markers,
// separatrices and a grid of background orbits with time arrows.

#include <atomic>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "dtk/report.hpp"

namespace dtk {

struct PortraitOptions {
  int grid = 6;
  unsigned long seed = 1;
  int size = 640;
  double orbit_time = 12;
  unsigned threads = 4;
};

struct Polyline {
  std::vector<std::pair<double, double>> pts;  // original plane
  /// +1 when increasing index runs with original time.
  int time_dir = 1;
  std::string cls;
};

struct Marker {
  std::pair<double, double> disk;  // unit disk
  std::string shape, tag, context, point;
};

namespace detail {

inline std::pair<double, double> to_disk(double x, double y) {
  double r = std::sqrt(1 + x * x + y * y);
  return {x / r, y / r};
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

inline std::string marker_shape(const ClassificationTag &t) {
  if (t.star) return "star";
  switch (t.category) {
    case Category::HyperbolicSaddle: return "saddle";
    case Category::HyperbolicNode: return t.stability == Stability::Stable ? "node-stable" : "node-unstable";
    case Category::HyperbolicFocus: return t.stability == Stability::Stable ? "focus-stable" : "focus-unstable";
    case Category::LinearCenter: return "center";
    case Category::LinearlyZero: return "linearly-zero";
    case Category::Nilpotent: return "nilpotent";
    case Category::SemiHyperbolic:
      switch (t.semi) {
        case SemiKind::Saddle: return "saddle";
        case SemiKind::Node: return t.stability == Stability::Stable ? "node-stable" : "node-unstable";
        case SemiKind::SaddleNode: return "saddle-node";
        case SemiKind::Undetermined: return "nilpotent";
      }
  }
  return "nilpotent";
}

/// Separatrix branches of a saddle of `chart` mapped to the plane; branches
/// that never leave the line at infinity are dropped.
inline void saddle_branches(const PlanarSystem &chart, std::pair<double, double> at, std::vector<Polyline> &out,
                            const std::string &cls, double eps) {
  for (auto kind : {SeparatrixKind::Unstable, SeparatrixKind::Stable})
    for (int side : {1, -1}) {
      SeparatrixOptions o;
      o.eps = eps;
      o.length = 30;
      o.integrator.tol = 1e-9;
      o.integrator.escape_radius = 1e4;
      o.integrator.max_steps = 20000;
      Trajectory tr;
      try {
        tr = trace_separatrix(chart, at, kind, side, o);
      } catch (const StepUnderflow &) {
        continue;
      } catch (const NotASaddle &) {
        return;
      }
      Polyline pl;
      pl.cls = cls;
      for (const auto &[x, y] : tr.plane)
        if (std::isfinite(x) && std::isfinite(y) && std::hypot(x, y) < 1e8) pl.pts.emplace_back(x, y);
      if (pl.pts.size() < 2) continue;
      const Sample &mid = tr.samples[tr.samples.size() / 2];
      int ts = time_sign_at(chart, {mid.x, mid.y});
      pl.time_dir = (kind == SeparatrixKind::Unstable ? 1 : -1) * ts;
      out.push_back(std::move(pl));
    }
}

}  // namespace detail

struct Portrait {
  std::vector<Marker> markers;
  std::vector<Polyline> separatrices, orbits;
  std::vector<std::string> notes;
  std::string svg;
};

inline Portrait build_portrait(const PlanarSystem &sys, const Config &cfg, const PortraitOptions &opt) {
  Portrait pr;
  std::vector<Equilibrium> finite = finite_equilibria(sys, cfg.classify_order);
  std::vector<Equilibrium> equator = equator_equilibria(sys, cfg.classify_order);
  for (const auto &e : finite) {
    auto [x, y] = e.point.approx();
    pr.markers.push_back({detail::to_disk(x, y), detail::marker_shape(e.kind), e.kind.to_string(), e.context, e.point.to_string()});
  }
  for (const auto &e : equator) {
    double c = e.point.approx().first;
    std::pair<double, double> dir = e.context == "chart-x" ? std::pair<double, double>{1, c} : std::pair<double, double>{c, 1};
    double n = std::hypot(dir.first, dir.second);
    for (int s : {1, -1})
      pr.markers.push_back({{s * dir.first / n, s * dir.second / n}, detail::marker_shape(e.kind), e.kind.to_string(), e.context,
                            e.point.to_string() + (s > 0 ? " +" : " -")});
  }

  for (const auto &e : finite)
    if (e.kind.category == Category::HyperbolicSaddle) detail::saddle_branches(sys, e.point.approx(), pr.separatrices, "separatrix", cfg.separatrix_eps);
  for (const auto &e : equator) {
    if (e.kind.category == Category::HyperbolicSaddle) {
      PlanarSystem chart = e.context == "chart-x" ? chart_x(sys) : chart_y(sys);
      detail::saddle_branches(chart, e.point.approx(), pr.separatrices, "separatrix", cfg.separatrix_eps);
    }
    if (e.kind.category == Category::LinearlyZero && e.context == "chart-x" && e.point.approx().first == 0) {
      SectorStructure s = assemble_sectors(chart_x(sys));
      pr.notes.push_back("O0: " + std::to_string(s.nodal) + " nodal, " + std::to_string(s.saddle) + " saddle, " +
                         std::to_string(s.elliptic) + " elliptic sectors");
      for (Branch b : {Branch::Positive, Branch::Negative}) {
        BlowupChart ch = blowup_and_rescale(chart_x(sys), b);
        for (const auto &d : divisor_equilibria(ch))
          if (d.kind.category == Category::HyperbolicSaddle)
            detail::saddle_branches(ch.sys, d.point.approx(), pr.separatrices, "sector-boundary", cfg.separatrix_eps);
      }
    }
  }

  // Background orbits from a jittered grid over the disk.
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jit(-0.3, 0.3);
  std::vector<std::pair<double, double>> seeds;
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      double a = -0.9 + 1.8 * (i + 0.5 + jit(rng)) / opt.grid, b = -0.9 + 1.8 * (j + 0.5 + jit(rng)) / opt.grid;
      double r2 = a * a + b * b;
      if (r2 >= 0.9) continue;
      double s = 1 / std::sqrt(1 - r2);
      seeds.emplace_back(a * s, b * s);
    }
  std::vector<std::vector<Polyline>> traced(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < seeds.size(); k = next++) {
      for (double dir : {1.0, -1.0}) {
        IntegratorOptions io = IntegratorOptions::make(1e-8, 1e4);
        io.max_steps = 20000;
        Polyline pl;
        pl.cls = "orbit";
        pl.time_dir = dir > 0 ? 1 : -1;
        try {
          Trajectory tr = integrate_trajectory(sys, seeds[k], 0, dir * opt.orbit_time, io);
          for (const auto &smp : tr.samples) pl.pts.emplace_back(smp.x, smp.y);
        } catch (const StepUnderflow &) {
          continue;
        }
        if (pl.pts.size() >= 2) traced[k].push_back(std::move(pl));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, opt.threads); ++t) pool.emplace_back(worker);
  for (auto &t : pool) t.join();
  for (auto &v : traced)
    for (auto &pl : v) pr.orbits.push_back(std::move(pl));

  // SVG.
  const double half = opt.size / 2.0, rad = half - 20;
  auto px = [&](std::pair<double, double> d) { return detail::fmt(half + rad * d.first) + "," + detail::fmt(half - rad * d.second); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.size << "\" height=\"" << opt.size
     << "\" viewBox=\"0 0 " << opt.size << " " << opt.size << "\">\n";
  os << "<title>Poincare disk: x' = " << sys.p.to_string() << ", y' = " << sys.q.to_string() << "</title>\n";
  os << "<circle class=\"equator\" cx=\"" << detail::fmt(half) << "\" cy=\"" << detail::fmt(half) << "\" r=\"" << detail::fmt(rad)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  auto polyline = [&](const Polyline &pl, const char *style) {
    std::string path;
    std::string last;
    for (const auto &[x, y] : pl.pts) {
      std::string p = px(detail::to_disk(x, y));
      if (p == last) continue;
      path += (path.empty() ? "" : " ") + p;
      last = p;
    }
    os << "<polyline class=\"" << pl.cls << "\" points=\"" << path << "\" fill=\"none\" " << style << "/>\n";
    // Arrow at the middle, pointing along original time.
    std::size_t m = pl.pts.size() / 2;
    std::size_t a = m > 0 ? m - 1 : 0, b = std::min(m + 1, pl.pts.size() - 1);
    auto da = detail::to_disk(pl.pts[a].first, pl.pts[a].second), db = detail::to_disk(pl.pts[b].first, pl.pts[b].second);
    double vx = (db.first - da.first) * pl.time_dir, vy = (db.second - da.second) * pl.time_dir, n = std::hypot(vx, vy);
    if (n < 1e-12) return;
    vx /= n, vy /= n;
    auto c = detail::to_disk(pl.pts[m].first, pl.pts[m].second);
    double s = 0.018;
    std::pair<double, double> tip{c.first + s * vx, c.second + s * vy}, l{c.first - s * vx - 0.6 * s * vy, c.second - s * vy + 0.6 * s * vx},
        r{c.first - s * vx + 0.6 * s * vy, c.second - s * vy - 0.6 * s * vx};
    os << "<polygon class=\"arrow\" points=\"" << px(tip) << " " << px(l) << " " << px(r) << "\" fill=\"black\"/>\n";
  };
  os << "<g class=\"orbits\">\n";
  for (const auto &pl : pr.orbits) polyline(pl, "stroke=\"#888888\" stroke-width=\"0.8\"");
  os << "</g>\n<g class=\"separatrices\">\n";
  for (const auto &pl : pr.separatrices) polyline(pl, "stroke=\"#c03030\" stroke-width=\"1.6\"");
  os << "</g>\n<g class=\"equilibria\">\n";
  for (const auto &m : pr.markers) {
    double cx = half + rad * m.disk.first, cy = half - rad * m.disk.second;
    os << "<g class=\"equilibrium\" data-shape=\"" << m.shape << "\" data-tag=\"" << m.tag << "\" data-context=\"" << m.context
       << "\" data-point=\"" << m.point << "\">";
    std::string X = detail::fmt(cx), Y = detail::fmt(cy);
    if (m.shape == "saddle") {
      os << "<path d=\"M" << detail::fmt(cx - 5) << "," << detail::fmt(cy - 5) << " L" << detail::fmt(cx + 5) << "," << detail::fmt(cy + 5)
         << " M" << detail::fmt(cx - 5) << "," << detail::fmt(cy + 5) << " L" << detail::fmt(cx + 5) << "," << detail::fmt(cy - 5)
         << "\" stroke=\"blue\" stroke-width=\"2\"/>";
    } else if (m.shape == "linearly-zero") {
      os << "<rect x=\"" << detail::fmt(cx - 5) << "\" y=\"" << detail::fmt(cy - 5) << "\" width=\"10\" height=\"10\" fill=\"orange\" stroke=\"black\"/>";
    } else if (m.shape == "saddle-node" || m.shape == "nilpotent") {
      os << "<polygon points=\"" << X << "," << detail::fmt(cy - 6) << " " << detail::fmt(cx - 6) << "," << detail::fmt(cy + 5) << " "
         << detail::fmt(cx + 6) << "," << detail::fmt(cy + 5) << "\" fill=\"" << (m.shape == "saddle-node" ? "purple" : "gray")
         << "\" stroke=\"black\"/>";
    } else {
      bool filled = m.shape.find("-stable") != std::string::npos;
      os << "<circle cx=\"" << X << "\" cy=\"" << Y << "\" r=\"5\" fill=\"" << (filled ? "black" : "white") << "\" stroke=\"black\"/>";
      if (m.shape == "star") os << "<circle cx=\"" << X << "\" cy=\"" << Y << "\" r=\"8\" fill=\"none\" stroke=\"black\"/>";
      if (m.shape.rfind("focus", 0) == 0 || m.shape == "center")
        os << "<circle cx=\"" << X << "\" cy=\"" << Y << "\" r=\"2\" fill=\"red\"/>";
    }
    os << "</g>\n";
  }
  os << "</g>\n";
  double ty = 16;
  for (const auto &n : pr.notes) {
    os << "<text class=\"note\" x=\"8\" y=\"" << detail::fmt(ty) << "\" font-size=\"12\" font-family=\"monospace\">" << n << "</text>\n";
    ty += 14;
  }
  os << "</svg>\n";
  pr.svg = os.str();
  return pr;
}

}  // namespace dtk
