#pragma once

/* Built-in parameter defaults and the two tournament forecast presets. Every
 * value here can be overridden through a scenario config or forecast file.
 */

#include "perils/calibration.hpp"
#include "perils/model.hpp"

namespace perils {

inline ModelParams default_params() { return ModelParams{}; }

// Calibrated peril rates carried into the scenario tables.
inline constexpr double superforecaster_d = 0.000021;  // 0.0021%/yr excess mortality
inline constexpr double expert_d = 0.000385;           // 0.0385%/yr
inline constexpr double superforecaster_dx = 0.0000016; // 0.00016%/yr extinction
inline constexpr double expert_dx = 0.0002286;          // 0.02286%/yr
inline constexpr int superforecaster_onset = 2038;
inline constexpr int expert_onset = 2037;

inline constexpr double default_world_utility = 16e9; // W: 2 utils x ~8bn people

inline ForecastSet superforecaster_forecasts() {
  ForecastSet fs;
  fs.group = "superforecasters";
  fs.pandemic_by = {{2030, 0.0025}, {2050, 0.015}, {2100, 0.04}};
  fs.natural_pandemic_by = {{2030, 0.005}, {2050, 0.0169}, {2100, 0.0362}};
  fs.catastrophe_by_2100 = 0.0085;
  fs.extinction_by_2100 = 0.0001;
  fs.total_extinction_by_2100 = 0.01;
  fs.total_catastrophe_by_2100 = 0.0904;
  fs.bio_extinction_by_2100 = 0.0001;
  fs.bio_catastrophe_by_2100 = 0.0085;
  fs.tai_prob = 0.0275;
  fs.preferred_q0 = 0.0004;
  fs.preferred_q1 = 0.0008;
  fs.onset_year = superforecaster_onset;
  return fs;
}

inline ForecastSet expert_forecasts() {
  ForecastSet fs;
  fs.group = "domain_experts";
  fs.pandemic_by = {{2030, 0.0122}, {2050, 0.08}, {2100, 0.1025}};
  fs.natural_pandemic_by = {{2030, 0.01}, {2050, 0.05}, {2100, 0.0814}};
  fs.catastrophe_by_2100 = 0.04;
  fs.extinction_by_2100 = 0.01;
  fs.total_extinction_by_2100 = 0.06;
  fs.total_catastrophe_by_2100 = 0.20;
  fs.bio_extinction_by_2100 = 0.01;
  fs.bio_catastrophe_by_2100 = 0.04;
  fs.tai_prob = 0.25;
  // the published preferred perils rate; the chained formula alone gives
  // ~0.53%, which does not reproduce the published excess mortality
  fs.preferred_q0 = 0.0018;
  fs.preferred_q1 = 0.0058;
  fs.onset_year = expert_onset;
  return fs;
}

} // namespace perils
