// dtk: analyze / portrait / gamma-probe front end.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dtk/portrait.hpp"

namespace {

struct Inputs {
  std::string p, system, config, out;
  int maxdeg = 2;
};

dtk::SystemInput read_input(const Inputs &in) {
  if (in.p.empty() == in.system.empty()) throw dtk::Error("give exactly one of --p and --system");
  if (!in.system.empty()) return dtk::load_system(in.system);
  dtk::Rational p;
  try {
    p = dtk::parse_rational(in.p);
  } catch (const std::exception &) {
    throw dtk::Error("--p must be a rational number such as 1, -1/2 or 0.25; got '" + in.p + "'");
  }
  return dtk::family_two_input(p);
}

dtk::Config read_config(const Inputs &in) { return in.config.empty() ? dtk::Config{} : dtk::Config::load(in.config); }

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw dtk::Error("cannot write " + path);
  f << text;
}

void add_common(CLI::App *cmd, Inputs &in) {
  cmd->add_option("--p", in.p, "rational parameter of x' = x - x^2 y + p x y^2 + y^3, y' = y + p y^3");
  cmd->add_option("--system", in.system, "system JSON file {p_comp, q_comp, params}");
  cmd->add_option("--maxdeg", in.maxdeg, "degree bound of the invariant-curve search (1 or 2)")->check(CLI::Range(1, 2));
  cmd->add_option("--config", in.config, "tolerance config (JSON key-value)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Qualitative analysis of planar cubic Darboux-type systems"};
  app.require_subcommand(1);
  Inputs in;
  auto *analyze = app.add_subcommand("analyze", "full pipeline; writes the JSON report");
  add_common(analyze, in);
  analyze->add_option("--out", in.out, "output file (default stdout)");

  auto *portrait = app.add_subcommand("portrait", "Poincare-disk portrait as SVG");
  add_common(portrait, in);
  dtk::PortraitOptions popt;
  portrait->add_option("--svg,--out", in.out, "SVG file (default stdout)");
  portrait->add_option("--grid", popt.grid, "background orbit grid density")->check(CLI::Range(0, 40));
  portrait->add_option("--seed", popt.seed, "seed for the orbit grid jitter");
  portrait->add_option("--threads", popt.threads, "worker threads for orbit tracing")->check(CLI::Range(1, 64));

  auto *probe = app.add_subcommand("gamma-probe", "algebraicity probe of the separatrix curve");
  int count = 200, pmax = 8;
  double ymin = 0.2, ymax = 3.0;
  std::string control, pconfig, pout;
  probe->add_option("--count", count, "sample size");
  probe->add_option("--ymin", ymin, "lower end of the y range");
  probe->add_option("--ymax", ymax, "upper end of the y range");
  probe->add_option("--maxdeg", pmax, "largest degree tried");
  probe->add_option("--control", control, "run a control curve instead")->check(CLI::IsMember({"algebraic"}));
  probe->add_option("--config", pconfig, "tolerance config (JSON key-value)");
  probe->add_option("--out", pout, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      dtk::AnalysisReport rep = dtk::analyze(read_input(in), read_config(in), in.maxdeg);
      emit(rep.dump(), in.out);
      for (const auto &e : rep.json["errors"]) std::cerr << "partial: " << e["stage"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
      return rep.exit_code;
    }
    if (*portrait) {
      dtk::SystemInput si = read_input(in);
      dtk::Portrait pr = dtk::build_portrait(si.sys, read_config(in), popt);
      emit(pr.svg, in.out);
      return 0;
    }
    if (*probe) {
      dtk::Config cfg = pconfig.empty() ? dtk::Config{} : dtk::Config::load(pconfig);
      if (probe->count("--count")) cfg.probe_count = count;
      if (probe->count("--ymin")) cfg.probe_y_min = ymin;
      if (probe->count("--ymax")) cfg.probe_y_max = ymax;
      if (probe->count("--maxdeg")) cfg.probe_maxdeg = pmax;
      dtk::ojson j;
      j["schema_version"] = dtk::kSchemaVersion;
      j["config_hash"] = cfg.hash();
      j["mode"] = control == "algebraic" ? "control" : "gamma";
      j["probe"] = dtk::probe_json(cfg, control == "algebraic");
      emit(j.dump(2) + "\n", pout);
      return 0;
    }
  } catch (const dtk::IllConditioned &e) {
    std::cerr << "IllConditioned: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
