#pragma once

/* Closed-form welfare model for the returns to one marginal year of science.
 *
 * Two scenarios are compared: the status quo, where frontier growth and health
 * gains follow trend and the time of perils begins after t1 periods, and a
 * pause-science scenario, where one year of science is skipped, growth drops
 * from G to g for a single year after lag T, population growth drops from s to
 * s_bar thereafter, and the onset of perils is delayed by one period.
 */

#include <cmath>
#include <string>

#include "perils/errors.hpp"
#include "perils/numeric.hpp"

namespace perils {

// Per-period flow utility. log_exact uses u(t) = 2 + t*ln(1+G), linear the
// first-order approximation u(t) = 2 + t*G. Reference tables were produced
// with the exact form, which is the default.
enum class flow_form { log_exact, linear };

struct ModelParams {
  double p = 0.98;         // annual probability of staying in the current epistemic regime
  double G = 0.01;         // status-quo per-capita growth attributable to frontier science
  double g = 0.0075;       // growth in the affected year when science is paused
  int T = 74;              // lag in years between science and global impact
  int t1 = 15;             // years until the time of perils begins
  double n0 = 8.05e9;      // initial population
  double s = 0.006;        // status-quo population growth rate
  double s_bar = 0.005967; // pause-science population growth rate
  double d = 0.0;          // annual excess mortality during the time of perils
  flow_form flow = flow_form::log_exact;

  // per-period increment of the utility flow
  double growth_slope() const {
    return flow == flow_form::log_exact ? std::log1p(G) : G;
  }
  // permanent per-period utility loss from one paused year of growth
  double income_step() const {
    return flow == flow_form::log_exact ? std::log1p(G) - std::log1p(g) : G - g;
  }

  void validate() const {
    if (!(p > 0.0 && p < 1.0)) raise(errc::domain, "p must lie in (0,1)");
    if (!(G >= 0.0)) raise(errc::domain, "G must be nonnegative");
    if (!(g >= 0.0 && g <= G)) raise(errc::domain, "g must lie in [0, G]");
    if (T < 1) raise(errc::domain, "T must be at least 1");
    if (t1 < 0 || t1 > T) raise(errc::domain, "t1 must lie in [0, T]");
    if (!(n0 > 0.0)) raise(errc::domain, "n0 must be positive");
    if (!(s_bar >= 0.0 && s_bar <= s)) raise(errc::domain, "s_bar must lie in [0, s]");
    if (!(d >= 0.0 && d < 1.0)) raise(errc::domain, "d must lie in [0, 1)");
    if (!(p * (1.0 + s) * (1.0 - d) < 1.0))
      raise(errc::divergence, "p(1+s)(1-d) must be below 1 for the series to converge");
  }
};

struct ModelTerms {
  double L = 0;     // expected discounted life-years factor under s
  double L_bar = 0; // same under s_bar
  double Delta = 0; // peril-window utility sum
  double N_T = 0;   // expected survivors at period T
  double U_T1 = 0;  // flow utility at period T+1
};

struct ImpactDecomposition {
  double pure_peril = 0;
  double pure_income = 0;
  double pure_health = 0;
  double health_income = 0;
  double total = 0;
};

inline double life_years_factor(double p, double growth, double d) {
  const double r = p * (1.0 + growth) * (1.0 - d);
  if (!(r < 1.0)) raise(errc::divergence, "life-years factor diverges: p(1+s)(1-d) >= 1");
  return r / (1.0 - r);
}

inline ModelTerms model_terms(const ModelParams& mp) {
  mp.validate();
  const double b = mp.growth_slope();
  const double r = mp.p * (1.0 + mp.s) * (1.0 - mp.d);
  const int t2 = mp.T - mp.t1;

  ModelTerms t;
  t.L = life_years_factor(mp.p, mp.s, mp.d);
  t.L_bar = life_years_factor(mp.p, mp.s_bar, mp.d);
  t.U_T1 = 2.0 + (mp.T + 1) * b;
  t.N_T = mp.n0 * std::pow(mp.p * (1.0 + mp.s), mp.T) * std::pow(1.0 - mp.d, t2);
  t.Delta = std::pow(mp.p * (1.0 + mp.s), mp.t1 + 1) *
            ag_sum_finite(r, 2.0 + (mp.t1 + 1) * b, b, t2);
  return t;
}

// Status-quo minus pause-science welfare, split into the four channels.
// total is computed as the sum of the components.
inline ImpactDecomposition impact_decomposition(const ModelParams& mp) {
  const ModelTerms t = model_terms(mp);
  const double relief = 1.0 / (1.0 - mp.d); // pause science spends one less period in peril
  ImpactDecomposition out;
  out.pure_peril = -mp.d * mp.n0 * t.Delta;
  out.pure_income = t.N_T * relief * t.L_bar * mp.income_step();
  out.pure_health = t.N_T * t.U_T1 * (t.L - relief * t.L_bar);
  out.health_income = t.N_T * mp.growth_slope() * (t.L * t.L - relief * t.L_bar * t.L_bar);
  out.total = out.pure_peril + out.pure_income + out.pure_health + out.health_income;
  return out;
}

// Variant where the time of perils is already underway and cannot be delayed:
// d applies in every period of both scenarios, so there is no peril channel
// and no one-period relief factor.
inline ImpactDecomposition too_late_impact(const ModelParams& mp) {
  mp.validate();
  const double b = mp.growth_slope();
  const double L = life_years_factor(mp.p, mp.s, mp.d);
  const double Lb = life_years_factor(mp.p, mp.s_bar, mp.d);
  const double U = 2.0 + (mp.T + 1) * b;
  const double NT = mp.n0 * std::pow(mp.p * (1.0 + mp.s) * (1.0 - mp.d), mp.T);
  ImpactDecomposition out;
  out.pure_peril = 0.0;
  out.pure_income = NT * Lb * mp.income_step();
  out.pure_health = NT * U * (L - Lb);
  out.health_income = NT * b * (L * L - Lb * Lb);
  out.total = out.pure_peril + out.pure_income + out.pure_health + out.health_income;
  return out;
}

enum class onset_variant { baseline, immediate_onset };

// Break-even peril rate: the d at which the returns to science are zero.
// Immediate onset is the same model with t1 = 1.
inline double breakeven_peril(ModelParams mp, onset_variant v = onset_variant::baseline,
                              double x_tol = 1e-12) {
  if (v == onset_variant::immediate_onset) mp.t1 = 1;
  return breakeven_root(
      [&mp](double d) {
        mp.d = d;
        return impact_decomposition(mp).total;
      },
      x_tol);
}

} // namespace perils
