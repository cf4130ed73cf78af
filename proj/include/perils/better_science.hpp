#pragma once

/* Better-science variant: the extra effective year of science still brings
 * the time of perils forward by one year, but also scales the peril rate d
 * (and the extinction rate dx) down by a fixed factor.
 */

#include <cmath>

#include "perils/errors.hpp"
#include "perils/model.hpp"
#include "perils/numeric.hpp"

namespace perils {

// Life-expectancy anchors behind the rate-reduction factor: a year of science
// cuts constant mortality 1/72.8 to 1/(72.8+0.19), a 0.26% proportional cut.
struct ReductionAnchors {
  double life_exp = 72.8;
  double science_le_gain = 0.19;

  double factor() const { return life_exp / (life_exp + science_le_gain); }
};

inline double reduced_peril(double d, const ReductionAnchors& anchors = {}) {
  if (!(d >= 0.0 && d < 1.0)) raise(errc::domain, "d must lie in [0, 1)");
  return anchors.factor() * d;
}

// Better-science minus pause-science welfare. The better-science stream is the
// status quo with d replaced by d_bar; the pause stream keeps d.
inline double better_science_impact(const ModelParams& mp, double d, double d_bar) {
  ModelParams chk = mp;
  chk.d = d;
  chk.validate();
  if (!(d_bar >= 0.0 && d_bar <= d)) raise(errc::domain, "d_bar must lie in [0, d]");

  const double b = mp.growth_slope();
  const double ps = mp.p * (1.0 + mp.s);
  const int t2 = mp.T - mp.t1;
  const double L_bs = life_years_factor(mp.p, mp.s, d_bar);
  const double L_ps = life_years_factor(mp.p, mp.s_bar, d);
  const double U = 2.0 + (mp.T + 1) * b;
  const double N_bs = mp.n0 * std::pow(ps, mp.T) * std::pow(1.0 - d_bar, t2);
  const double N_sq = mp.n0 * std::pow(ps, mp.T) * std::pow(1.0 - d, t2);

  // peril window: better science is exposed at rate d_bar from t1+1, the pause
  // lags one period behind at rate d
  double window = 0.0;
  {
    double w = std::pow(ps, mp.t1 + 1);
    double surv_bs = 1.0 - d_bar;
    double surv_ps = 1.0;
    for (int t = mp.t1 + 1; t <= mp.T; ++t) {
      window += w * (surv_bs - surv_ps) * (2.0 + t * b);
      w *= ps;
      surv_bs *= 1.0 - d_bar;
      surv_ps *= 1.0 - d;
    }
  }

  return mp.n0 * window + N_bs * L_bs * (U + b * L_bs) -
         N_sq / (1.0 - d) * L_ps * (U - mp.income_step() + L_ps * b);
}

// Ratio of better-science returns to plain more-science returns at the same d.
inline double utility_scaling(const ModelParams& mp, double d, double d_bar) {
  ModelParams base = mp;
  base.d = d;
  const double denom = impact_decomposition(base).total;
  if (denom == 0.0)
    raise(errc::domain, "baseline impact is zero; utility scaling is undefined");
  return better_science_impact(mp, d, d_bar) / denom;
}

// Peril rate at which better science breaks even, with d_bar tied to d by the
// anchored reduction factor.
inline double breakeven_peril_better(const ModelParams& mp, const ReductionAnchors& anchors = {},
                                     double x_tol = 1e-12) {
  const double f = anchors.factor();
  return breakeven_root(
      [&mp, f](double d) { return better_science_impact(mp, d, f * d); }, x_tol);
}

// True when cutting extinction risk by factor lambda_x outweighs the extra
// year spent exposed to it.
inline bool extinction_improvement_condition(double p, double dx, double lambda_x) {
  if (!(p > 0.0 && p < 1.0)) raise(errc::domain, "p must lie in (0,1)");
  if (!(dx >= 0.0 && dx < 1.0)) raise(errc::domain, "dx must lie in [0, 1)");
  if (!(lambda_x >= 0.0 && lambda_x <= 1.0)) raise(errc::domain, "lambda_x must lie in [0, 1]");
  return p / (1.0 - p * dx) > lambda_x;
}

// Break-even lambda when better science reduces dx to dx_bar alongside the
// one-year acceleration. impact_total is the utility difference of the chosen
// health model.
inline double breakeven_lambda_better(const ModelParams& mp, double dx, double dx_bar,
                                      double W, double impact_total) {
  if (!(dx > 0.0 && dx < 1.0)) raise(errc::domain, "dx must lie in (0, 1)");
  if (!(dx_bar >= 0.0 && dx_bar <= dx)) raise(errc::domain, "dx_bar must lie in [0, dx]");
  if (!(W > 0.0)) raise(errc::domain, "W must be positive");
  const double exposure = (1.0 + mp.p * dx) / (1.0 - mp.p * (1.0 - dx));
  const double relief = 1.0 / (1.0 - mp.p * (1.0 - dx_bar));
  const double bracket = exposure - relief;
  if (!(bracket > 0.0))
    raise(errc::no_root, "extinction term is net positive; no finite break-even lambda");
  return impact_total / W / (1.0 - mp.p) / bracket;
}

// Defensive-to-offensive capability ratio. Large organizations get new
// capabilities immediately; small ones wait T years, unless a fraction x_leak
// of frontier capabilities leaks to them.
inline double capability_ratio(double s_share, double o_share, double g, double T,
                               double x_leak) {
  if (!(o_share > 0.0)) raise(errc::domain, "offensive share must be positive");
  if (!(s_share >= 0.0)) raise(errc::domain, "safe share must be nonnegative");
  if (!(g > -1.0)) raise(errc::domain, "growth rate must exceed -1");
  if (!(x_leak >= 0.0 && x_leak <= 1.0)) raise(errc::domain, "x_leak must lie in [0, 1]");
  const double gT = std::pow(1.0 + g, T);
  if (x_leak <= 0.0) return s_share * gT / o_share;
  // small organizations hold a_t + x_leak (A_t - a_t) capabilities
  return s_share / (o_share * ((1.0 - x_leak) / gT + x_leak));
}

} // namespace perils
