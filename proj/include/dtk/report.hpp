#pragma once

// The analysis report: every stage of the pipeline collected into one
// ordered JSON document. Stage failures are recorded and the rest still runs.

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "dtk/config.hpp"
#include "dtk/io.hpp"
#include "dtk/numeric.hpp"

namespace dtk {

using ojson = nlohmann::ordered_json;

/// Finite, or null for inf/nan (JSON has no such numbers).
inline ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

inline const char *stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::None: return "none";
  }
  return "none";
}

inline const char *category_name(Category c) {
  switch (c) {
    case Category::HyperbolicNode: return "hyperbolic-node";
    case Category::HyperbolicSaddle: return "hyperbolic-saddle";
    case Category::HyperbolicFocus: return "hyperbolic-focus";
    case Category::LinearCenter: return "linear-center";
    case Category::SemiHyperbolic: return "semi-hyperbolic";
    case Category::Nilpotent: return "nilpotent";
    case Category::LinearlyZero: return "linearly-zero";
  }
  return "unknown";
}

inline ojson equilibrium_json(const Equilibrium &e) {
  ojson j;
  j["point"] = e.point.to_string();
  auto [x, y] = e.point.approx();
  j["approx"] = ojson::array({num(x), num(y)});
  j["context"] = e.context;
  j["tag"] = e.kind.to_string();
  j["category"] = category_name(e.kind.category);
  j["stability"] = stability_name(e.kind.stability);
  j["star"] = e.kind.star;
  j["jacobian"] = ojson::array({ojson::array({e.jacobian.entry_string(0, 0), e.jacobian.entry_string(0, 1)}),
                                ojson::array({e.jacobian.entry_string(1, 0), e.jacobian.entry_string(1, 1)})});
  if (e.kind.category == Category::SemiHyperbolic) {
    j["reduced_flow"] = {{"multiplicity", e.kind.multiplicity},
                         {"leading_coeff", e.kind.leading_coeff.get_str()},
                         {"lambda_sign", e.kind.lambda_sign}};
  }
  j["evidence"] = e.kind.evidence;
  return j;
}

inline ojson sectors_json(const SectorStructure &s) {
  ojson j;
  j["nodal"] = s.nodal;
  j["saddle"] = s.saddle;
  j["elliptic"] = s.elliptic;
  j["degenerate"] = s.degenerate;
  j["note"] = s.note;
  ojson cyc = ojson::array();
  for (const auto &d : s.cycle)
    cyc.push_back({{"label", d.label},
                   {"chart", d.chart},
                   {"coordinate", d.coordinate},
                   {"tag", d.tag},
                   {"along", d.along},
                   {"transverse", d.transverse},
                   {"asymptotic", d.asymptotic},
                   {"tangent_angle", num(d.tangent_angle)}});
  j["cycle"] = cyc;
  ojson sec = ojson::array();
  for (const auto &x : s.sectors) sec.push_back({{"type", sector_name(x.type)}, {"from", x.from}, {"to", x.to}});
  j["sectors"] = sec;
  return j;
}

inline ojson darboux_object_json(const DarbouxObject &o) {
  ojson j;
  j["kind"] = o.kind == DarbouxKind::AlgebraicCurve ? "curve" : "exponential";
  j["body"] = o.body.to_string();
  j["degree"] = o.body.total_degree();
  j["cofactor"] = o.cofactor.to_string();
  j["useful"] = o.useful;
  return j;
}

inline ojson first_integral_json(const FirstIntegral &h) {
  ojson j;
  j["text"] = h.text;
  j["rational"] = h.rational;
  j["verified"] = h.verified;
  j["trivial"] = h.trivial;
  ojson fs = ojson::array();
  for (const auto &[o, a] : h.factors)
    fs.push_back({{"kind", o.kind == DarbouxKind::AlgebraicCurve ? "curve" : "exponential"},
                  {"body", o.body.to_string()},
                  {"cofactor", o.cofactor.to_string()},
                  {"alpha", a.get_str()}});
  j["factors"] = fs;
  j["scale"] = h.scale.get_str();
  j["numerator"] = h.numerator.to_string();
  j["denominator"] = h.denominator.to_string();
  j["exponent"] = h.exponent.to_string();
  j["remarkable_values"] = h.remarkable_values;
  j["remarkable_verified"] = h.remarkable_verified;
  return j;
}

inline ojson probe_json(const Config &cfg, bool control_only = false) {
  ojson j;
  ojson rows = ojson::array();
  auto row_json = [](const ProbeRow &r) {
    return ojson{{"degree", r.degree}, {"monomials", r.monomials}, {"sigma_min", num(r.sigma_min)}, {"holdout", num(r.holdout)}};
  };
  CurveSample control = algebraic_control_sample(cfg.probe_count, cfg.probe_y_min, cfg.probe_y_max);
  ProbeReport cr = algebraicity_probe(control, 3);
  double control_sigma = cr.sigma_at(3);
  j["count"] = cfg.probe_count;
  j["y_range"] = ojson::array({cfg.probe_y_min, cfg.probe_y_max});
  j["digits"] = cr.digits;
  ojson cj;
  cj["curve"] = control.parametrization;
  ojson crow = ojson::array();
  for (const auto &r : cr.rows) crow.push_back(row_json(r));
  cj["rows"] = crow;
  cj["sigma_at_degree_3"] = num(control_sigma);
  cj["ceiling"] = cfg.probe_control_ceiling;
  cj["pass"] = control_sigma <= cfg.probe_control_ceiling;
  j["control"] = cj;
  if (control_only) return j;
  GammaSample g = sample_gamma(cfg.probe_count, cfg.probe_y_min, cfg.probe_y_max);
  ProbeReport gr = algebraicity_probe(g, cfg.probe_maxdeg);
  ojson gj;
  gj["curve"] = g.parametrization;
  gj["maxdeg"] = cfg.probe_maxdeg;
  for (const auto &r : gr.rows) rows.push_back(row_json(r));
  gj["rows"] = rows;
  gj["min_sigma"] = num(gr.min_sigma());
  gj["floor"] = cfg.probe_gamma_floor;
  gj["pass"] = gr.min_sigma() >= cfg.probe_gamma_floor;
  j["gamma"] = gj;
  double sep = control_sigma > 0 ? gr.min_sigma() / control_sigma : std::numeric_limits<double>::infinity();
  j["separation"] = num(sep);
  j["separation_required"] = cfg.probe_separation;
  j["separation_pass"] = sep >= cfg.probe_separation;
  return j;
}

struct AnalysisReport {
  ojson json;
  /// 0 complete, 2 partial (a solver stage gave up).
  int exit_code = 0;
  std::string dump() const { return json.dump(2) + "\n"; }
};

namespace detail {

/// Runs one stage; recognised solver failures are logged into `errors`.
inline bool run_stage(const char *stage, ojson &errors, const std::function<void()> &body) {
  auto log = [&](const char *type, const std::exception &e) { errors.push_back({{"stage", stage}, {"type", type}, {"message", e.what()}}); };
  try {
    body();
    return true;
  } catch (const SolverIncomplete &e) {
    log("SolverIncomplete", e);
  } catch (const NonHyperbolicDivisor &e) {
    log("NonHyperbolicDivisor", e);
  } catch (const HalfPowerResidue &e) {
    log("HalfPowerResidue", e);
  } catch (const PositiveDimensional &e) {
    log("PositiveDimensional", e);
  } catch (const UndeterminedAtOrder &e) {
    log("UndeterminedAtOrder", e);
  } catch (const ShapeError &e) {
    log("ShapeError", e);
  } catch (const StepUnderflow &e) {
    log("StepUnderflow", e);
  } catch (const Error &e) {
    log("Error", e);
  }
  return false;
}

}  // namespace detail

inline AnalysisReport analyze(const SystemInput &in, const Config &cfg, int maxdeg) {
  if (maxdeg < 1 || maxdeg > 2) throw Error("maxdeg must be 1 or 2");
  const PlanarSystem &sys = in.sys;
  ojson errors = ojson::array();
  ojson r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  r["config_hash"] = cfg.hash();
  r["config"] = cfg.to_json();
  r["input"] = system_to_json(in);
  r["maxdeg"] = maxdeg;

  ojson finite = ojson::array();
  detail::run_stage("finite_equilibria", errors, [&] {
    for (const auto &e : finite_equilibria(sys, cfg.classify_order)) finite.push_back(equilibrium_json(e));
  });
  r["finite_equilibria"] = finite;

  ojson equator = ojson::array();
  ojson lz = ojson::array();
  detail::run_stage("equator_equilibria", errors, [&] {
    for (const auto &e : equator_equilibria(sys, cfg.classify_order)) {
      equator.push_back(equilibrium_json(e));
      if (e.kind.category == Category::LinearlyZero) {
        ojson entry;
        entry["point"] = e.point.to_string();
        entry["context"] = e.context;
        bool origin_of_x_chart = e.context == "chart-x" && e.point.is_rational() && e.point.x_number().rational_value() == 0;
        if (origin_of_x_chart) {
          detail::run_stage("sectors", errors, [&] { entry["sectors"] = sectors_json(assemble_sectors(chart_x(sys))); });
        } else {
          entry["sectors"] = nullptr;
          entry["note"] = "blow-up implemented for the origin of chart-x only";
        }
        lz.push_back(entry);
      }
    }
  });
  r["equator_equilibria"] = equator;
  r["linearly_zero_points"] = lz;

  ojson dj;
  std::optional<FirstIntegral> integral;
  detail::run_stage("darboux", errors, [&] {
    DarbouxAnalysis a = darboux_analysis(sys, maxdeg);
    ojson curves = ojson::array(), exps = ojson::array();
    for (const auto &o : a.inventory.curves) curves.push_back(darboux_object_json(o));
    for (const auto &o : a.exponentials) exps.push_back(darboux_object_json(o));
    dj["curves"] = curves;
    dj["pencil"] = a.inventory.pencil;
    dj["exponential_factors"] = exps;
    dj["relation_dimension"] = a.relation_dimension;
    dj["note"] = a.note.empty() ? a.inventory.note : a.note;
    dj["first_integral"] = a.integral ? first_integral_json(*a.integral) : ojson(nullptr);
    integral = a.integral;
  });
  r["darboux"] = dj.empty() ? ojson(nullptr) : dj;

  ojson cons = nullptr;
  if (integral && integral->verified && !integral->trivial) {
    detail::run_stage("conservation", errors, [&] {
      ConstancyOptions o;
      o.seed = cfg.constancy_seed;
      o.box = cfg.constancy_box;
      o.integrator.tol = cfg.integrator_tol;
      o.integrator.min_speed = cfg.min_speed;
      auto rep = check_integral_constancy(sys, *integral, cfg.constancy_trials, cfg.constancy_tol, o);
      cons = {{"trials", cfg.constancy_trials},
              {"tol", cfg.constancy_tol},
              {"seed", cfg.constancy_seed},
              {"max_drift", num(rep.max_drift)},
              {"pass", rep.pass}};
    });
  }
  r["conservation"] = cons;

  ojson probe = nullptr;
  if (cfg.analyze_probe) detail::run_stage("probe", errors, [&] { probe = probe_json(cfg); });
  r["probe"] = probe;

  r["status"] = errors.empty() ? "complete" : "partial";
  r["errors"] = errors;
  AnalysisReport rep;
  rep.exit_code = errors.empty() ? 0 : 2;
  rep.json = std::move(r);
  return rep;
}

}  // namespace dtk
