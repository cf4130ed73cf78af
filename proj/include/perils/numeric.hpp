#pragma once

#include <cmath>
#include <functional>

#include "perils/errors.hpp"

namespace perils {

// sum_{t=0}^{inf} r^t (a + b*t), requires |r| < 1
inline double ag_sum(double r, double a, double b) {
  if (!(std::fabs(r) < 1.0))
    raise(errc::divergence, "arithmetico-geometric series requires |r| < 1");
  const double q = 1.0 - r;
  return a / q + b * r / (q * q);
}

// sum_{t=0}^{n-1} r^t (a + b*t)
inline double ag_sum_finite(double r, double a, double b, long n) {
  if (n <= 0) return 0.0;
  if (r == 1.0) return a * double(n) + b * double(n) * double(n - 1) / 2.0;
  const double q = 1.0 - r;
  const double rn = std::pow(r, double(n));
  const double geo = (1.0 - rn) / q;
  const double arith = (r - double(n) * rn + double(n - 1) * rn * r) / (q * q);
  return a * geo + b * arith;
}

// Bisection on [lo, hi]; requires a sign change. Converges to |hi-lo| <= x_tol.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double x_tol, int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    raise(errc::no_root, "bisection interval does not bracket a root");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= x_tol) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  raise(errc::no_convergence, "bisection failed to converge");
}

// Root of a decreasing objective on [0, hi_cap). The objective must be positive
// at 0; the upper bracket grows geometrically until the sign flips.
inline double breakeven_root(const std::function<double(double)>& f, double x_tol = 1e-12,
                             double hi_cap = 0.999999) {
  if (!(f(0.0) > 0.0))
    raise(errc::no_root, "objective is not positive at zero; no break-even exists");
  double hi = 1e-4;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi >= hi_cap) {
      if (f(hi_cap) > 0.0)
        raise(errc::no_root, "objective stays positive over the admissible interval");
      hi = hi_cap;
      break;
    }
  }
  return bisect(f, 0.0, hi, x_tol);
}

} // namespace perils
