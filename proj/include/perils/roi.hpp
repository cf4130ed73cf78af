#pragma once

#include <cmath>

#include "perils/errors.hpp"

namespace perils {

// Annual global spending on basic research, USD. 15.5% basic-research share
// applied to ~$2.3trn of 2019 world R&D.
inline constexpr double default_science_spend = 357e9;

// Income of the benchmark recipient: giving $1 to someone earning this much
// yields 1/benchmark_income utils under log-income utility.
inline constexpr double default_benchmark_income = 50000.0;

// Express a raw utility difference as a multiple of the benchmark transfer's
// utility per dollar. Linear in delta_utils.
inline double to_op_multiple(double delta_utils, double science_spend = default_science_spend,
                             double benchmark_income = default_benchmark_income) {
  if (!(science_spend > 0.0)) raise(errc::domain, "science spend must be positive");
  return delta_utils * benchmark_income / science_spend;
}

// Generational back-of-envelope break-even peril rate. x is the proportional
// lifetime-utility gain from income, y the gain from longer life. Weighing n
// generations, a year of science costs n*d*U in added mortality against
// (n-1)(x+y)U in benefits, so indifference sits at d* = (n-1)(x+y)/n.
inline double back_of_envelope(double income_gain, double life_exp, double le_gain,
                               double science_share, int generations) {
  if (generations < 2) raise(errc::domain, "at least two generations are required");
  if (!(life_exp > science_share * le_gain))
    raise(errc::domain, "life expectancy must exceed the science-attributable gain");
  const double x = std::log1p(income_gain) / 2.0;
  const double y = life_exp / (life_exp - science_share * le_gain) - 1.0;
  return double(generations - 1) * (x + y) / double(generations);
}

} // namespace perils
