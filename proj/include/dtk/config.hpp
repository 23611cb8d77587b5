#pragma once

// Tolerances and thresholds, loaded from a flat JSON object.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "dtk/rational.hpp"

namespace dtk {

inline constexpr const char *kToolName = "dtk";
inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kSchemaVersion = "1.0.0";

struct Config {
  int classify_order = 6;
  double integrator_tol = 1e-12;
  double escape_radius = 1e6;
  double min_speed = 1e-12;
  double separatrix_eps = 1e-6;
  int constancy_trials = 10;
  double constancy_tol = 1e-6;
  double constancy_box = 1.0;
  unsigned long constancy_seed = 20240601;
  int probe_count = 200;
  double probe_y_min = 0.2;
  double probe_y_max = 3.0;
  int probe_maxdeg = 8;
  double probe_gamma_floor = 1e-40;
  double probe_control_ceiling = 1e-10;
  double probe_separation = 1e6;
  bool analyze_probe = true;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["classify_order"] = classify_order;
    j["integrator_tol"] = integrator_tol;
    j["escape_radius"] = escape_radius;
    j["min_speed"] = min_speed;
    j["separatrix_eps"] = separatrix_eps;
    j["constancy_trials"] = constancy_trials;
    j["constancy_tol"] = constancy_tol;
    j["constancy_box"] = constancy_box;
    j["constancy_seed"] = constancy_seed;
    j["probe_count"] = probe_count;
    j["probe_y_min"] = probe_y_min;
    j["probe_y_max"] = probe_y_max;
    j["probe_maxdeg"] = probe_maxdeg;
    j["probe_gamma_floor"] = probe_gamma_floor;
    j["probe_control_ceiling"] = probe_control_ceiling;
    j["probe_separation"] = probe_separation;
    j["analyze_probe"] = analyze_probe;
    return j;
  }

  /// Unknown keys are rejected so that typos do not silently fall back.
  static Config from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw Error("config: expected a JSON object");
    Config c;
    nlohmann::ordered_json known = c.to_json();
    for (const auto &[k, v] : j.items()) {
      if (!known.contains(k)) throw Error("config: unknown key '" + k + "'");
      if (v.type() != known[k].type() && !(v.is_number() && known[k].is_number()))
        throw Error("config: key '" + k + "' has the wrong type");
    }
    auto get = [&](const char *k, auto &field) {
      if (j.contains(k)) field = j.at(k).get<std::remove_reference_t<decltype(field)>>();
    };
    get("classify_order", c.classify_order);
    get("integrator_tol", c.integrator_tol);
    get("escape_radius", c.escape_radius);
    get("min_speed", c.min_speed);
    get("separatrix_eps", c.separatrix_eps);
    get("constancy_trials", c.constancy_trials);
    get("constancy_tol", c.constancy_tol);
    get("constancy_box", c.constancy_box);
    get("constancy_seed", c.constancy_seed);
    get("probe_count", c.probe_count);
    get("probe_y_min", c.probe_y_min);
    get("probe_y_max", c.probe_y_max);
    get("probe_maxdeg", c.probe_maxdeg);
    get("probe_gamma_floor", c.probe_gamma_floor);
    get("probe_control_ceiling", c.probe_control_ceiling);
    get("probe_separation", c.probe_separation);
    get("analyze_probe", c.analyze_probe);
    return c;
  }

  static Config load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error &e) {
      throw Error("config: " + path + ": " + e.what());
    }
    return from_json(j);
  }

  /// FNV-1a 64 of the canonical dump, as 16 hex digits.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : to_json().dump()) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
  }
};

}  // namespace dtk
