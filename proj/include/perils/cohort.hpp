#pragma once

/* Cohort-based health model. A constant number of people is born each period;
 * each cohort dies off along the fitted survival curve, plus the excess peril
 * mortality after onset. Pausing science sets survival part of a year back
 * (weight h) after lag T and delays the peril onset by one period. Welfare is
 * summed directly over periods and ages.
 */

#include <algorithm>
#include <cmath>
#include <vector>

#include "perils/errors.hpp"
#include "perils/model.hpp"
#include "perils/numeric.hpp"
#include "perils/survival.hpp"

namespace perils {

struct CohortGrid {
  int horizon = 3000;            // periods simulated
  double births_per_year = 130e6;
  double tail_tol = 1e-6;
};

// Precomputes every survival grid that does not depend on d, so break-even
// solving can reevaluate cheaply across peril rates.
class cohort_engine {
public:
  cohort_engine(const ModelParams& mp, const SurvivalModel& model, double h,
                CohortGrid grid = {})
      : mp_(mp), h_(h), grid_(grid), n_ages_(model.age_cap + 1) {
    mp_.validate();
    if (!(h > 0.0 && h <= 1.0)) raise(errc::domain, "h must lie in (0, 1]");
    if (grid.horizon <= mp.T + 1) raise(errc::domain, "horizon must exceed T + 1");

    const int H = grid_.horizon;
    // S(t, a) for t in [-1, H]; row index t+1
    S_.resize(std::size_t(H + 2) * n_ages_);
    for (int t = -1; t <= H; ++t)
      for (int a = 0; a < n_ages_; ++a) {
        const double birth_year = 2023.0 + double(t - a) - model.birth_offset;
        S_[idx(t, a)] = survival_share(model, birth_year, a);
      }

    // Sbar(t, a): natural survival when science pauses for one year.
    //  - t <= T: unaffected.
    //  - born after T: the blended curve Shat throughout life.
    //  - cohorts alive at T: reach T on the status-quo curve, then shed the
    //    same share of survivors as the blended curve from their age at T on.
    Sbar_.resize(std::size_t(H + 2) * n_ages_);
    auto shat = [&](int t, int a) { return (1.0 - h_) * S_[idx(t, a)] + h_ * S_[idx(t - 1, a)]; };
    for (int t = -1; t <= H; ++t)
      for (int a = 0; a < n_ages_; ++a) {
        if (t <= mp_.T) {
          Sbar_[idx(t, a)] = S_[idx(t, a)];
        } else if (t - a > mp_.T) {
          Sbar_[idx(t, a)] = shat(t, a);
        } else {
          const int age_at_T = mp_.T - (t - a);
          const double anchor = shat(mp_.T, age_at_T);
          Sbar_[idx(t, a)] =
              anchor > 0.0 ? S_[idx(mp_.T, age_at_T)] * shat(t, a) / anchor : 0.0;
        }
      }
  }

  // Status-quo population at period t under peril rate d.
  double population_sq(int t, double d) const {
    double sum = 0.0;
    for (int a = 0; a < n_ages_; ++a) sum += peril_factor_sq(t, a, d) * S_[idx(t, a)];
    return grid_.births_per_year * sum;
  }

  // Pause-science population at period t under peril rate d.
  double population_ps(int t, double d) const {
    double sum = 0.0;
    for (int a = 0; a < n_ages_; ++a) {
      const int exposure = t <= mp_.t1 + 1 ? 0 : std::min(t - mp_.t1 - 1, a);
      sum += std::pow(1.0 - d, exposure) * Sbar_[idx(t, a)];
    }
    return grid_.births_per_year * sum;
  }

  ImpactDecomposition impact(double d) const {
    ModelParams chk = mp_;
    chk.d = d;
    chk.validate();

    const int H = grid_.horizon;
    const double b = mp_.growth_slope();
    const double dg = mp_.income_step();
    const double U_T1 = 2.0 + (mp_.T + 1) * b;

    // (1-d)^k lookup; exposure never exceeds the horizon
    std::vector<double> powd(std::size_t(H) + 2);
    powd[0] = 1.0;
    for (std::size_t k = 1; k < powd.size(); ++k) powd[k] = powd[k - 1] * (1.0 - d);

    ImpactDecomposition out;
    double gross = 0.0;
    double pw = 1.0;
    double pop_sq_last = 0.0, pop_ps_last = 0.0;
    for (int t = 0; t <= H; ++t) {
      double pop_sq = 0.0, pop_ps = 0.0;
      const int exp_sq_max = t - mp_.t1;      // exposure years before the age cap binds
      const int exp_ps_max = t - mp_.t1 - 1;
      for (int a = 0; a < n_ages_; ++a) {
        const int e_sq = exp_sq_max <= 0 ? 0 : std::min(exp_sq_max, a);
        const int e_ps = exp_ps_max <= 0 ? 0 : std::min(exp_ps_max, a);
        pop_sq += powd[e_sq] * S_[idx(t, a)];
        pop_ps += powd[e_ps] * Sbar_[idx(t, a)];
      }
      pop_sq *= grid_.births_per_year;
      pop_ps *= grid_.births_per_year;
      const double u_sq = 2.0 + double(t) * b;
      if (t <= mp_.T) {
        out.pure_peril += pw * (pop_sq - pop_ps) * u_sq;
      } else {
        out.pure_income += pw * pop_ps * dg;
        out.pure_health += pw * (pop_sq - pop_ps) * U_T1;
        out.health_income += pw * (pop_sq - pop_ps) * double(t - mp_.T - 1) * b;
      }
      gross += pw * (pop_sq + pop_ps) * u_sq;
      pop_sq_last = pop_sq;
      pop_ps_last = pop_ps;
      pw *= mp_.p;
    }

    // populations are bounded by births * (age_cap + 1), so the discarded tail
    // is at most a geometric-linear series from H+1 on
    const double cap = grid_.births_per_year * double(n_ages_);
    const double q = 1.0 - mp_.p;
    const double a_next = 2.0 + double(H + 1) * b;
    const double tail = pw * std::max(cap, pop_sq_last + pop_ps_last) *
                        (a_next / q + b * mp_.p / (q * q));
    if (tail > grid_.tail_tol * std::max(gross, 1.0))
      raise(errc::domain, "horizon too small: cohort series tail exceeds tolerance");

    out.total = out.pure_peril + out.pure_income + out.pure_health + out.health_income;
    return out;
  }

  const ModelParams& params() const { return mp_; }

private:
  std::size_t idx(int t, int a) const { return std::size_t(t + 1) * n_ages_ + a; }

  // survival factor against unnatural peril risk: exposure starts after onset
  // and cannot exceed the years a person has lived
  double peril_factor_sq(int t, int a, double d) const {
    if (t <= mp_.t1 || d == 0.0) return 1.0;
    const int exposure = std::min(t - mp_.t1, a);
    return std::pow(1.0 - d, exposure);
  }

  ModelParams mp_;
  double h_;
  CohortGrid grid_;
  int n_ages_;
  std::vector<double> S_;
  std::vector<double> Sbar_;
};

// One-shot evaluation of the cohort decomposition at peril rate d.
inline ImpactDecomposition realistic_impact(const ModelParams& mp, const SurvivalModel& model,
                                            double h, CohortGrid grid = {}) {
  cohort_engine engine(mp, model, h, grid);
  return engine.impact(mp.d);
}

// Break-even peril rate under the cohort model.
inline double realistic_breakeven(const ModelParams& mp, const SurvivalModel& model, double h,
                                  CohortGrid grid = {}, double x_tol = 1e-12) {
  cohort_engine engine(mp, model, h, grid);
  return breakeven_root([&engine](double d) { return engine.impact(d).total; }, x_tol);
}

} // namespace perils
