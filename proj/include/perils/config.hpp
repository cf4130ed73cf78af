#pragma once

/* Scenario configuration: UTF-8 `key = value` lines with '#' comments.
 * Percent-valued entries accept a '%' suffix and are stored as fractions.
 * Unknown keys are rejected; missing keys keep their defaults.
 */

#include <fstream>
#include <sstream>
#include <string>

#include "perils/errors.hpp"
#include "perils/model.hpp"
#include "perils/presets.hpp"

namespace perils {

struct ScenarioConfig {
  ModelParams params = default_params();
  double dx = 0.0;
  double W = default_world_utility;
  double lambda = 0.0;
  double h = 0.5625;       // share of a year's health progress lost when pausing
  int onset_year = superforecaster_onset;
  std::string variant = "baseline"; // baseline|immediate|too-late|realistic|better
  std::string forecast_file;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& raw, int lineno) {
  std::string v = trim(raw);
  const bool pct = !v.empty() && v.back() == '%';
  if (pct) v = trim(v.substr(0, v.size() - 1));
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(raw);
    return pct ? x / 100.0 : x;
  } catch (const std::exception&) {
    raise(errc::config, "config line " + std::to_string(lineno) + ": bad number '" + raw + "'");
  }
}

} // namespace detail

inline ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(errc::config, "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto num = [&]() { return detail::parse_number(value, lineno); };

    if (key == "p") cfg.params.p = num();
    else if (key == "G") cfg.params.G = num();
    else if (key == "g") cfg.params.g = num();
    else if (key == "T") cfg.params.T = int(num());
    else if (key == "t1") cfg.params.t1 = int(num());
    else if (key == "n0") cfg.params.n0 = num();
    else if (key == "s") cfg.params.s = num();
    else if (key == "s_bar") cfg.params.s_bar = num();
    else if (key == "d") cfg.params.d = num();
    else if (key == "flow") {
      if (value == "log") cfg.params.flow = flow_form::log_exact;
      else if (value == "linear") cfg.params.flow = flow_form::linear;
      else raise(errc::config, "config line " + std::to_string(lineno) +
                                   ": flow must be 'log' or 'linear'");
    }
    else if (key == "dx") cfg.dx = num();
    else if (key == "W") cfg.W = num();
    else if (key == "lambda") cfg.lambda = num();
    else if (key == "h") cfg.h = num();
    else if (key == "onset_year") cfg.onset_year = int(num());
    else if (key == "variant") cfg.variant = value;
    else if (key == "forecast_file") cfg.forecast_file = value;
    else raise(errc::config,
               "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::config, "cannot open config file: " + path);
  return parse_config(in);
}

} // namespace perils
