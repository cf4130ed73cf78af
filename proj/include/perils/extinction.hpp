#pragma once

/* Extension with civilization-ending risk. During the time of perils an
 * annual probability dx of extinction forecloses the value of ever exiting
 * the current epistemic regime, worth E[V*] = lambda * W.
 */

#include <cmath>

#include "perils/errors.hpp"
#include "perils/model.hpp"
#include "perils/numeric.hpp"

namespace perils {

struct ExtinctionParams {
  double dx = 0.0;     // annual extinction probability during perils
  double W = 16e9;     // one year of world utility, ~2 utils x 8bn people
  double lambda = 0.0; // post-regime-exit value as a multiple of W

  void validate(const ModelParams& mp) const {
    if (!(dx >= 0.0 && dx < 1.0)) raise(errc::domain, "dx must lie in [0, 1)");
    if (mp.d > 0.0 && !(dx <= mp.d)) raise(errc::domain, "dx must not exceed d");
    if (!(W > 0.0)) raise(errc::domain, "W must be positive");
    if (!(mp.p * (1.0 - dx) < 1.0)) raise(errc::divergence, "p(1-dx) must be below 1");
  }
};

// Expected loss from the extra year of extinction exposure: dying in that year
// forecloses E[V*], which arrives with probability (1-p) per period over
// 1/(1-p(1-dx)) expected periods.
inline double extinction_penalty(const ModelParams& mp, double dx, double lambda, double W) {
  return dx * (1.0 - mp.p) / (1.0 - mp.p * (1.0 - dx)) * lambda * W;
}

// Baseline impact minus the extinction penalty.
inline double extinction_adjusted_impact(const ModelParams& mp, const ExtinctionParams& ex) {
  ex.validate(mp);
  return impact_decomposition(mp).total - extinction_penalty(mp, ex.dx, ex.lambda, ex.W);
}

// The lambda at which the adjusted impact is exactly zero, given the utility
// difference of the chosen health model (pass too the realistic total for the
// realistic variant).
inline double breakeven_lambda(const ModelParams& mp, double dx, double W,
                               double impact_total) {
  if (!(dx > 0.0)) raise(errc::domain, "break-even lambda is undefined for dx = 0");
  if (!(W > 0.0)) raise(errc::domain, "W must be positive");
  if (impact_total < 0.0)
    raise(errc::domain, "impact must be nonnegative for a meaningful break-even lambda");
  return impact_total / W * (1.0 - mp.p * (1.0 - dx)) / (dx * (1.0 - mp.p));
}

// Simplified-health convenience overload.
inline double breakeven_lambda(const ModelParams& mp, double dx, double W = 16e9) {
  return breakeven_lambda(mp, dx, W, impact_decomposition(mp).total);
}

// Discount factor rho making a perpetual stream of present-style utility
// worth lambda*W: lambda = 1/(1-rho) + (G/2) rho/(1-rho)^2. The left side is
// strictly increasing in rho, so bisection applies; the 1e-14 interval
// tolerance comfortably exceeds the 1e-10 requirement.
inline double rho_for_lambda(double lambda, double G, double x_tol = 1e-14) {
  if (!(lambda > 1.0)) raise(errc::no_root, "lambda must exceed 1 for a discount solution");
  if (!(G >= 0.0)) raise(errc::domain, "G must be nonnegative");
  auto value = [G](double rho) {
    const double q = 1.0 - rho;
    return 1.0 / q + 0.5 * G * rho / (q * q);
  };
  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  if (value(hi) < lambda) raise(errc::no_root, "lambda out of representable range");
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= x_tol) return mid;
    (value(mid) < lambda ? lo : hi) = mid;
  }
  raise(errc::no_convergence, "rho bisection failed to converge");
}

// Inverse of rho_for_lambda's closed form, for round-trip checks.
inline double lambda_for_rho(double rho, double G) {
  if (!(rho > 0.0 && rho < 1.0)) raise(errc::domain, "rho must lie in (0,1)");
  const double q = 1.0 - rho;
  return 1.0 / q + 0.5 * G * rho / (q * q);
}

} // namespace perils
