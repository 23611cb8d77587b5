#pragma once

// System descriptions as JSON: {"p_comp": "...", "q_comp": "...", "params": {"p": "1/2"}}.

#include <fstream>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "dtk/system.hpp"

namespace dtk {

struct SystemInput {
  PlanarSystem sys;
  std::map<std::string, Rational> params;
  std::string p_text, q_text;
};

inline SystemInput system_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("p_comp") || !j.contains("q_comp"))
    throw Error("system JSON needs string fields p_comp and q_comp");
  SystemInput in;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw Error("system JSON: params must be an object");
    for (const auto &[k, v] : j["params"].items()) {
      if (v.is_string()) in.params[k] = parse_rational(v.get<std::string>());
      else if (v.is_number_integer()) in.params[k] = Rational(v.get<long>());
      else throw Error("system JSON: parameter '" + k + "' must be a rational string or an integer");
    }
  }
  in.p_text = j["p_comp"].get<std::string>();
  in.q_text = j["q_comp"].get<std::string>();
  in.sys = PlanarSystem(parse_poly(in.p_text, in.params), parse_poly(in.q_text, in.params));
  return in;
}

inline SystemInput load_system(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open system file " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error &e) {
    throw Error("system file " + path + ": " + e.what());
  }
  return system_from_json(j);
}

inline SystemInput family_two_input(const Rational &p) {
  SystemInput in;
  in.params["p"] = p;
  in.p_text = "x - x^2*y + p*x*y^2 + y^3";
  in.q_text = "y + p*y^3";
  in.sys = family_two(p);
  return in;
}

inline nlohmann::ordered_json system_to_json(const SystemInput &in) {
  nlohmann::ordered_json j;
  j["p_comp"] = in.p_text;
  j["q_comp"] = in.q_text;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto &[k, v] : in.params) params[k] = v.get_str();
  j["params"] = params;
  j["expanded"] = {{"p", in.sys.p.to_string()}, {"q", in.sys.q.to_string()}};
  return j;
}

}  // namespace dtk
