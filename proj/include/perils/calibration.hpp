#pragma once

/* Calibration of the model's annual rates from cumulative tournament
 * forecasts: annualization, conditioning on staying in the current epistemic
 * regime, peril-rate and severity-share solving, and the expected excess
 * mortality d.
 */

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "perils/errors.hpp"
#include "perils/numeric.hpp"

namespace perils {

inline constexpr int forecast_epoch = 2023;   // forecasts are quoted "by year Y" from here
inline constexpr int forecast_end_year = 2100;

// average mortality fraction for events killing 0-1%, 1-10%, 10-99.9%, 100%
inline std::array<double, 4> default_severities() { return {0.0, 0.02, 0.20, 1.0}; }

// Which cumulative risks gate exit from the current epistemic regime.
enum class regime_gate { extinction, catastrophe };

struct ForecastSet {
  std::string group;                        // superforecasters | domain_experts | custom
  std::map<int, double> pandemic_by;        // year -> P(engineered pandemic kills >1%)
  std::map<int, double> natural_pandemic_by;// same for natural pathogens (reporting only)
  double catastrophe_by_2100 = 0.0;         // engineered pathogen kills >10%
  double extinction_by_2100 = 0.0;          // engineered pathogen kills 100%
  double total_extinction_by_2100 = 0.0;    // all causes
  double total_catastrophe_by_2100 = 0.0;   // all causes (catastrophe regime gate)
  double bio_extinction_by_2100 = 0.0;      // biological causes, for backing out the rest
  double bio_catastrophe_by_2100 = 0.0;
  double tai_prob = 0.0;                    // P(>=15% GDP growth year by 2100)
  double preferred_q0 = -1.0;               // published preferred rates; negative = use solved
  double preferred_q1 = -1.0;
  int onset_year = 2038;

  void validate() const {
    auto prob = [](double x, const char* name) {
      if (!(x >= 0.0 && x <= 1.0)) raise(errc::domain, std::string(name) + " must lie in [0,1]");
    };
    double prev = 0.0;
    for (const auto& [year, prob_v] : pandemic_by) {
      prob(prob_v, "pandemic forecast");
      if (prob_v + 1e-15 < prev)
        raise(errc::domain, "cumulative pandemic forecasts must be nondecreasing in year");
      prev = prob_v;
    }
    prob(catastrophe_by_2100, "catastrophe_by_2100");
    prob(extinction_by_2100, "extinction_by_2100");
    prob(total_extinction_by_2100, "total_extinction_by_2100");
    prob(total_catastrophe_by_2100, "total_catastrophe_by_2100");
    prob(bio_extinction_by_2100, "bio_extinction_by_2100");
    prob(bio_catastrophe_by_2100, "bio_catastrophe_by_2100");
    prob(tai_prob, "tai_prob");
  }
};

struct PerilCalibration {
  double p_regime_annual = 1.0;
  double q0 = 0.0, q1 = 0.0, q2 = 0.0; // annual pandemic rates: baseline, perils, post-2050
  double q0_solved = 0.0, q1_solved = 0.0; // formula outputs before any preferred-rate override
  int onset_year = 0;
  double x_annual = 0.0; // annual extinction probability during perils
  double c = 0.0;        // share of >=1% events that reach >=10%
  double cond_pandemic_2030 = 0.0, cond_pandemic_2050 = 0.0, cond_pandemic_2100 = 0.0;
  double cond_catastrophe_2100 = 0.0, cond_extinction_2100 = 0.0;
  std::array<double, 4> buckets_baseline{1.0, 0.0, 0.0, 0.0};
  std::array<double, 4> buckets_perils{1.0, 0.0, 0.0, 0.0};
  double d_baseline = 0.0, d_perils = 0.0, d_excess = 0.0;
};

// 1 - (1-P)^(1/years): the constant annual probability compounding to P.
inline double annualize_cumulative(double P, int years) {
  if (!(P >= 0.0 && P < 1.0)) raise(errc::domain, "cumulative probability must lie in [0,1)");
  if (years < 1) raise(errc::domain, "years must be at least 1");
  return 1.0 - std::pow(1.0 - P, 1.0 / double(years));
}

// Annual rate over (y_early, y_late] implied by chained no-event probabilities.
inline double interval_annual_rate(double P_early, double P_late, int y_early, int y_late) {
  if (!(P_early >= 0.0 && P_early < 1.0))
    raise(errc::domain, "early cumulative probability must lie in [0,1)");
  if (!(P_late >= P_early && P_late <= 1.0))
    raise(errc::domain, "late cumulative probability must be >= early and <= 1");
  if (y_late <= y_early) raise(errc::domain, "interval must have positive length");
  return 1.0 - std::pow((1.0 - P_late) / (1.0 - P_early), 1.0 / double(y_late - y_early));
}

// Annual probability of staying in the current epistemic regime. Non-bio risk
// is backed out of the totals; exit is non-bio risk plus transformative AI,
// treated as mutually exclusive.
inline double regime_survival_annual(double total_risk_by_2100, double bio_risk_by_2100,
                                     double tai_prob, int horizon_years) {
  if (!(bio_risk_by_2100 < 1.0)) raise(errc::domain, "bio risk must be below 1");
  if (!(total_risk_by_2100 >= 0.0 && total_risk_by_2100 <= 1.0))
    raise(errc::domain, "total risk must lie in [0,1]");
  if (horizon_years < 1) raise(errc::domain, "horizon must be at least 1 year");
  const double non_bio = 1.0 - (1.0 - total_risk_by_2100) / (1.0 - bio_risk_by_2100);
  const double exit = non_bio + tai_prob;
  if (!(exit < 1.0)) raise(errc::domain, "exit probabilities sum to 1 or more");
  return std::pow(1.0 - exit, 1.0 / double(horizon_years));
}

inline double regime_survival_annual(const ForecastSet& fs,
                                     int horizon_years = forecast_end_year - forecast_epoch,
                                     regime_gate gate = regime_gate::extinction) {
  fs.validate();
  if (gate == regime_gate::catastrophe)
    return regime_survival_annual(fs.total_catastrophe_by_2100, fs.bio_catastrophe_by_2100,
                                  fs.tai_prob, horizon_years);
  return regime_survival_annual(fs.total_extinction_by_2100, fs.bio_extinction_by_2100,
                                fs.tai_prob, horizon_years);
}

// Inflate an unconditional forecast to one conditional on remaining in the
// current regime: events are impossible once the regime is exited.
inline double condition_on_regime(double P_uncond, double p_annual, int horizon_years) {
  if (!(p_annual > 0.0 && p_annual <= 1.0)) raise(errc::domain, "p_annual must lie in (0,1]");
  if (!(P_uncond >= 0.0 && P_uncond <= 1.0))
    raise(errc::domain, "unconditional probability must lie in [0,1]");
  if (horizon_years < 0) raise(errc::domain, "horizon must be nonnegative");
  const double cond = P_uncond / std::pow(p_annual, double(horizon_years));
  if (cond > 1.0)
    raise(errc::domain, "conditional probability exceeds 1; inputs are inconsistent");
  return cond;
}

// The peril rate q1 from onset_year on that, after a baseline stretch at q0,
// reproduces the conditional cumulative forecast for 2050.
inline double solve_perils_rate(double q0, double P_cond_2050, int onset_year) {
  if (!(onset_year > forecast_epoch && onset_year < 2050))
    raise(errc::domain, "onset year must lie strictly between 2023 and 2050");
  if (!(q0 >= 0.0 && q0 < 1.0)) raise(errc::domain, "q0 must lie in [0,1)");
  if (!(P_cond_2050 >= 0.0 && P_cond_2050 < 1.0))
    raise(errc::domain, "conditional 2050 forecast must lie in [0,1)");
  const double survive_baseline = std::pow(1.0 - q0, double(onset_year - forecast_epoch));
  if (!(survive_baseline > 1.0 - P_cond_2050))
    raise(errc::domain, "baseline rate already exceeds the 2050 forecast; implied q1 < 0");
  return 1.0 -
         std::pow((1.0 - P_cond_2050) / survive_baseline, 1.0 / double(2050 - onset_year));
}

// Annual extinction rate during perils, assuming extinction is impossible
// before onset.
inline double annual_extinction_rate(double P_cond_ext_2100, int onset_year) {
  if (onset_year >= forecast_end_year) raise(errc::domain, "onset year must precede 2100");
  if (!(P_cond_ext_2100 >= 0.0 && P_cond_ext_2100 < 1.0))
    raise(errc::domain, "extinction probability must lie in [0,1)");
  return 1.0 - std::pow(1.0 - P_cond_ext_2100, 1.0 / double(forecast_end_year - onset_year));
}

// Share c of >=1% events that reach >=10%, solving
//   1 - P_cat = (1-c q0)^{onset-2023} (1-c qhat1 - x)^{2100-onset}
// by bisection; the left side is monotone decreasing in c.
inline double solve_catastrophe_share(double P_cat_cond, double q0, double qhat1, double x,
                                      int onset_year, double tol = 1e-10) {
  if (!(P_cat_cond >= 0.0 && P_cat_cond < 1.0))
    raise(errc::domain, "conditional catastrophe probability must lie in [0,1)");
  if (!(q0 >= 0.0 && q0 < 1.0) || !(qhat1 >= 0.0 && qhat1 < 1.0) || !(x >= 0.0 && x < 1.0))
    raise(errc::domain, "rates must lie in [0,1)");
  if (onset_year <= forecast_epoch || onset_year >= forecast_end_year)
    raise(errc::domain, "onset year must lie strictly between 2023 and 2100");
  const double y0 = double(onset_year - forecast_epoch);
  const double y1 = double(forecast_end_year - onset_year);
  auto no_event = [&](double c) {
    const double base = 1.0 - c * q0;
    const double perils = 1.0 - c * qhat1 - x;
    if (base <= 0.0 || perils <= 0.0) return 0.0;
    return std::pow(base, y0) * std::pow(perils, y1);
  };
  const double target = 1.0 - P_cat_cond;
  if (no_event(0.0) < target - tol)
    raise(errc::no_root, "extinction rate alone already exceeds the catastrophe forecast");
  if (no_event(0.0) <= target) return 0.0;
  if (no_event(1.0) > target)
    raise(errc::no_root, "no share in [0,1] matches the catastrophe forecast");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (no_event(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Probability-weighted annual mortality over the four severity buckets.
inline double expected_annual_mortality(const std::array<double, 4>& bucket_probs,
                                        const std::array<double, 4>& severities) {
  double sum = 0.0;
  for (double b : bucket_probs) {
    if (!(b >= -1e-12)) raise(errc::domain, "bucket probabilities must be nonnegative");
    sum += b;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    raise(errc::domain, "bucket probabilities must sum to 1");
  double d = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!(severities[i] >= 0.0 && severities[i] <= 1.0))
      raise(errc::domain, "severities must lie in [0,1]");
    d += bucket_probs[i] * severities[i];
  }
  return d;
}

// End-to-end pipeline. Published preferred rates, when present, override the
// solved q0/q1 before the severity step; both are reported.
inline PerilCalibration calibrate(const ForecastSet& fs, int onset_year,
                                  std::array<double, 4> severities = default_severities(),
                                  regime_gate gate = regime_gate::extinction) {
  fs.validate();
  auto fetch = [&](int year) {
    auto it = fs.pandemic_by.find(year);
    if (it == fs.pandemic_by.end())
      raise(errc::domain, "forecast set lacks a pandemic forecast for " + std::to_string(year));
    return it->second;
  };

  PerilCalibration out;
  out.onset_year = onset_year;
  out.p_regime_annual = regime_survival_annual(fs, forecast_end_year - forecast_epoch, gate);

  const double p = out.p_regime_annual;
  out.cond_pandemic_2030 = condition_on_regime(fetch(2030), p, 2030 - forecast_epoch);
  out.cond_pandemic_2050 = condition_on_regime(fetch(2050), p, 2050 - forecast_epoch);
  out.cond_pandemic_2100 = condition_on_regime(fetch(2100), p, 2100 - forecast_epoch);
  out.cond_catastrophe_2100 =
      condition_on_regime(fs.catastrophe_by_2100, p, forecast_end_year - forecast_epoch);
  out.cond_extinction_2100 =
      condition_on_regime(fs.extinction_by_2100, p, forecast_end_year - forecast_epoch);

  out.q0_solved = annualize_cumulative(out.cond_pandemic_2030, 2030 - forecast_epoch);
  out.q1_solved = solve_perils_rate(out.q0_solved, out.cond_pandemic_2050, onset_year);
  out.q2 = interval_annual_rate(out.cond_pandemic_2050, out.cond_pandemic_2100, 2050,
                                forecast_end_year);

  out.q0 = fs.preferred_q0 >= 0.0 ? fs.preferred_q0 : out.q0_solved;
  out.q1 = fs.preferred_q1 >= 0.0 ? fs.preferred_q1 : out.q1_solved;

  out.x_annual = annual_extinction_rate(out.cond_extinction_2100, onset_year);
  const double qhat1 = out.q1 - out.x_annual;
  if (qhat1 < 0.0) raise(errc::domain, "extinction rate exceeds the perils pandemic rate");
  out.c = solve_catastrophe_share(out.cond_catastrophe_2100, out.q0, qhat1, out.x_annual,
                                  onset_year);

  const double cat_base = out.c * out.q0;
  out.buckets_baseline = {1.0 - out.q0, out.q0 - cat_base, cat_base, 0.0};
  const double cat_perils = out.c * qhat1 + out.x_annual;
  out.buckets_perils = {1.0 - out.q1, out.q1 - cat_perils, cat_perils - out.x_annual,
                        out.x_annual};

  out.d_baseline = expected_annual_mortality(out.buckets_baseline, severities);
  out.d_perils = expected_annual_mortality(out.buckets_perils, severities);
  out.d_excess = out.d_perils - out.d_baseline;
  return out;
}

// ---- forecast input file: UTF-8 `key,value` rows, '#' comments ----

inline ForecastSet parse_forecast_csv(std::istream& in) {
  ForecastSet fs;
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      raise(errc::config, "forecast file line " + std::to_string(lineno) + ": expected key,value");
    const std::string key = trim(line.substr(0, comma));
    const std::string value = trim(line.substr(comma + 1));
    auto num = [&]() {
      try {
        size_t pos = 0;
        std::string v = value;
        bool pct = !v.empty() && v.back() == '%';
        if (pct) v.pop_back();
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(value);
        return pct ? x / 100.0 : x;
      } catch (const std::exception&) {
        raise(errc::config, "forecast file line " + std::to_string(lineno) + ": bad number '" +
                                value + "'");
      }
    };
    any = true;
    if (key == "group") {
      fs.group = value;
    } else if (key.rfind("pandemic_by_", 0) == 0) {
      fs.pandemic_by[std::stoi(key.substr(12))] = num();
    } else if (key.rfind("natural_pandemic_by_", 0) == 0) {
      fs.natural_pandemic_by[std::stoi(key.substr(20))] = num();
    } else if (key == "catastrophe_by_2100") {
      fs.catastrophe_by_2100 = num();
    } else if (key == "extinction_by_2100") {
      fs.extinction_by_2100 = num();
    } else if (key == "total_extinction_by_2100") {
      fs.total_extinction_by_2100 = num();
    } else if (key == "total_catastrophe_by_2100") {
      fs.total_catastrophe_by_2100 = num();
    } else if (key == "bio_extinction_by_2100") {
      fs.bio_extinction_by_2100 = num();
    } else if (key == "bio_catastrophe_by_2100") {
      fs.bio_catastrophe_by_2100 = num();
    } else if (key == "tai_prob") {
      fs.tai_prob = num();
    } else if (key == "preferred_q0") {
      fs.preferred_q0 = num();
    } else if (key == "preferred_q1") {
      fs.preferred_q1 = num();
    } else if (key == "onset_year") {
      fs.onset_year = int(num());
    } else {
      raise(errc::config,
            "forecast file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!any) raise(errc::config, "forecast file is empty");
  fs.validate();
  return fs;
}

inline ForecastSet load_forecast_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::data, "cannot open forecast file: " + path);
  return parse_forecast_csv(in);
}

} // namespace perils
