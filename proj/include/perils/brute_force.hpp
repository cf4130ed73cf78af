#pragma once

/* Direct finite-horizon summation of the welfare streams. This is the
 * validation path for the closed forms in model.hpp and better_science.hpp:
 * it walks the two scenarios period by period and shares no series algebra
 * with them. Production code should use the closed forms.
 */

#include <cmath>

#include "perils/errors.hpp"
#include "perils/model.hpp"

namespace perils {

namespace detail {

// exact value of sum_{k=0}^{inf} w * r^k (a + b*k), used as a discarded-tail
// estimate with w the running weight at the first discarded period
inline double series_tail(double w, double r, double a, double b) {
  const double q = 1.0 - r;
  return w * (a / q + b * r / (q * q));
}

} // namespace detail

// Term-by-term evaluation of the status-quo minus pause-science difference.
// horizon must be large enough that the discarded geometric tails are below
// tail_tol of the accumulated gross magnitude.
inline ImpactDecomposition brute_force_impact(const ModelParams& mp, long horizon,
                                              double tail_tol = 1e-9) {
  mp.validate();
  if (horizon <= mp.T) raise(errc::domain, "horizon must exceed T");

  const double b = mp.growth_slope();
  const double dg = mp.income_step();
  const double U_T1 = 2.0 + (mp.T + 1) * b;
  const double ps = mp.p * (1.0 + mp.s);

  ImpactDecomposition out;
  double gross = 0.0;

  // peril window: both scenarios still on trend income, but the pause is one
  // (1-d) factor behind on peril exposure
  {
    double w = std::pow(ps, mp.t1 + 1); // (p(1+s))^t at t = t1+1
    double surv_sq = 1.0 - mp.d;        // (1-d)^{t-t1}
    double surv_ps = 1.0;               // (1-d)^{t-t1-1}
    for (long t = mp.t1 + 1; t <= mp.T; ++t) {
      const double u = 2.0 + double(t) * b;
      out.pure_peril += w * (surv_sq - surv_ps) * u * mp.n0;
      gross += w * (surv_sq + surv_ps) * u * mp.n0;
      w *= ps;
      surv_sq *= 1.0 - mp.d;
      surv_ps *= 1.0 - mp.d;
    }
  }

  // after T: populations diverge (s vs s_bar) and pause income is one step lower
  {
    double w_sq = std::pow(ps, mp.T + 1) * std::pow(1.0 - mp.d, mp.T + 1 - mp.t1);
    double w_ps = std::pow(mp.p, mp.T + 1) * std::pow(1.0 + mp.s, mp.T) * (1.0 + mp.s_bar) *
                  std::pow(1.0 - mp.d, mp.T - mp.t1);
    const double step_sq = mp.p * (1.0 + mp.s) * (1.0 - mp.d);
    const double step_ps = mp.p * (1.0 + mp.s_bar) * (1.0 - mp.d);
    for (long t = mp.T + 1; t <= horizon; ++t) {
      const double u = 2.0 + double(t) * b;
      out.pure_income += mp.n0 * w_ps * dg;
      out.pure_health += mp.n0 * (w_sq - w_ps) * U_T1;
      out.health_income += mp.n0 * (w_sq - w_ps) * double(t - mp.T - 1) * b;
      gross += mp.n0 * (w_sq + w_ps) * u;
      w_sq *= step_sq;
      w_ps *= step_ps;
    }
    const double a_next = 2.0 + double(horizon + 1) * b;
    const double tail = mp.n0 * (detail::series_tail(w_sq, step_sq, a_next, b) +
                                 detail::series_tail(w_ps, step_ps, a_next, b));
    if (tail > tail_tol * std::max(gross, 1.0))
      raise(errc::domain, "horizon too small: series tail exceeds tolerance");
  }

  out.total = out.pure_peril + out.pure_income + out.pure_health + out.health_income;
  return out;
}

// Same exercise for the too-late variant: d applies everywhere in both
// scenarios, and the scenarios only differ after period T.
inline ImpactDecomposition brute_force_too_late(const ModelParams& mp, long horizon,
                                                double tail_tol = 1e-9) {
  mp.validate();
  if (horizon <= mp.T) raise(errc::domain, "horizon must exceed T");

  const double b = mp.growth_slope();
  const double dg = mp.income_step();
  const double U_T1 = 2.0 + (mp.T + 1) * b;

  ImpactDecomposition out;
  double gross = 0.0;
  double w_sq = std::pow(mp.p * (1.0 + mp.s) * (1.0 - mp.d), mp.T + 1);
  double w_ps = std::pow(mp.p * (1.0 - mp.d), mp.T + 1) * std::pow(1.0 + mp.s, mp.T) *
                (1.0 + mp.s_bar);
  const double step_sq = mp.p * (1.0 + mp.s) * (1.0 - mp.d);
  const double step_ps = mp.p * (1.0 + mp.s_bar) * (1.0 - mp.d);
  for (long t = mp.T + 1; t <= horizon; ++t) {
    const double u = 2.0 + double(t) * b;
    out.pure_income += mp.n0 * w_ps * dg;
    out.pure_health += mp.n0 * (w_sq - w_ps) * U_T1;
    out.health_income += mp.n0 * (w_sq - w_ps) * double(t - mp.T - 1) * b;
    gross += mp.n0 * (w_sq + w_ps) * u;
    w_sq *= step_sq;
    w_ps *= step_ps;
  }
  const double a_next = 2.0 + double(horizon + 1) * b;
  const double tail = mp.n0 * (detail::series_tail(w_sq, step_sq, a_next, b) +
                               detail::series_tail(w_ps, step_ps, a_next, b));
  if (tail > tail_tol * std::max(gross, 1.0))
    raise(errc::domain, "horizon too small: series tail exceeds tolerance");

  out.total = out.pure_income + out.pure_health + out.health_income;
  return out;
}

// Better-science (d reduced to d_bar, perils one year earlier) minus
// pause-science, walked period by period.
inline double brute_force_better_science(const ModelParams& mp, double d, double d_bar,
                                         long horizon, double tail_tol = 1e-9) {
  ModelParams chk = mp;
  chk.d = d;
  chk.validate();
  if (!(d_bar >= 0.0 && d_bar <= d)) raise(errc::domain, "d_bar must lie in [0, d]");
  if (!(mp.p * (1.0 + mp.s) * (1.0 - d_bar) < 1.0))
    raise(errc::divergence, "p(1+s)(1-d_bar) must be below 1 for the series to converge");
  if (horizon <= mp.T) raise(errc::domain, "horizon must exceed T");

  const double b = mp.growth_slope();
  const double dg = mp.income_step();
  const double ps = mp.p * (1.0 + mp.s);

  double acc = 0.0;
  double gross = 0.0;

  double w = std::pow(ps, mp.t1 + 1);
  double surv_bs = 1.0 - d_bar; // (1-d_bar)^{t-t1}
  double surv_ps = 1.0;         // (1-d)^{t-t1-1}
  for (long t = mp.t1 + 1; t <= mp.T; ++t) {
    const double u = 2.0 + double(t) * b;
    acc += mp.n0 * w * (surv_bs - surv_ps) * u;
    gross += mp.n0 * w * (surv_bs + surv_ps) * u;
    w *= ps;
    surv_bs *= 1.0 - d_bar;
    surv_ps *= 1.0 - d;
  }

  double w_bs = std::pow(ps, mp.T + 1) * std::pow(1.0 - d_bar, mp.T + 1 - mp.t1);
  double w_ps = std::pow(mp.p, mp.T + 1) * std::pow(1.0 + mp.s, mp.T) * (1.0 + mp.s_bar) *
                std::pow(1.0 - d, mp.T - mp.t1);
  const double step_bs = mp.p * (1.0 + mp.s) * (1.0 - d_bar);
  const double step_ps = mp.p * (1.0 + mp.s_bar) * (1.0 - d);
  for (long t = mp.T + 1; t <= horizon; ++t) {
    const double u_bs = 2.0 + double(t) * b;
    const double u_ps = u_bs - dg;
    acc += mp.n0 * (w_bs * u_bs - w_ps * u_ps);
    gross += mp.n0 * (w_bs * u_bs + w_ps * u_ps);
    w_bs *= step_bs;
    w_ps *= step_ps;
  }
  const double a_next = 2.0 + double(horizon + 1) * b;
  const double tail = mp.n0 * (detail::series_tail(w_bs, step_bs, a_next, b) +
                               detail::series_tail(w_ps, step_ps, a_next, b));
  if (tail > tail_tol * std::max(gross, 1.0))
    raise(errc::domain, "horizon too small: series tail exceeds tolerance");

  return acc;
}

} // namespace perils
