#pragma once

/* Builders for the reference scenario tables and the calibration report,
 * with aligned-text and CSV renderers. Text output rounds to display
 * precision; CSV carries full precision.
 */

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "perils/better_science.hpp"
#include "perils/calibration.hpp"
#include "perils/cohort.hpp"
#include "perils/extinction.hpp"
#include "perils/model.hpp"
#include "perils/presets.hpp"
#include "perils/roi.hpp"
#include "perils/survival.hpp"

namespace perils {

struct table_cell {
  std::string display;
  std::string csv;
};

struct table_doc {
  std::string id;
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<table_cell>> rows;
};

namespace fmt {

inline std::string printf_str(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline table_cell label(const std::string& s) { return {s, s}; }

inline table_cell number(double v, const char* display_fmt) {
  if (std::fabs(v) < 1e-9) v = 0.0; // keep -0.00 out of the rendered tables
  return {printf_str(display_fmt, v), printf_str("%.17g", v)};
}

inline table_cell multiple(double utils) { return number(to_op_multiple(utils), "%.0f"); }
inline table_cell percent(double frac, int decimals = 4) {
  const std::string f = "%." + std::to_string(decimals) + "f%%";
  table_cell c = number(frac, "%.17g");
  c.display = printf_str(f.c_str(), frac * 100.0);
  return c;
}
inline table_cell ratio(double v) { return number(v, "%.2f"); }
inline table_cell plain(double v) { return number(v, "%.0f"); }

} // namespace fmt

struct scenario_rows {
  std::vector<std::pair<std::string, double>> entries; // label, d
};

inline scenario_rows default_scenarios() {
  return {{{"No time of perils", 0.0},
           {"Superforecasters", superforecaster_d},
           {"Domain experts", expert_d}}};
}

// ---- scenario tables ----

inline table_doc table_baseline(const ModelParams& base) {
  table_doc t{"7",
              "Impact of a year of science, closed-form model (benchmark multiples)",
              {"Scenario", "d", "Pure peril", "Pure income", "Pure health",
               "Health-income", "Total"},
              {}};
  ModelParams mp = base;
  auto row = [&](const std::string& name, double d) {
    mp.d = d;
    const ImpactDecomposition dec = impact_decomposition(mp);
    t.rows.push_back({fmt::label(name), fmt::percent(d), fmt::multiple(dec.pure_peril),
                      fmt::multiple(dec.pure_income), fmt::multiple(dec.pure_health),
                      fmt::multiple(dec.health_income), fmt::multiple(dec.total)});
  };
  for (const auto& [name, d] : default_scenarios().entries) row(name, d);
  row("Break-even", breakeven_peril(base));
  return t;
}

inline table_doc table_realistic(const ModelParams& base, const SurvivalModel& model, double h) {
  table_doc t{"8",
              "Impact of a year of science, cohort health model (benchmark multiples)",
              {"Scenario", "d", "Pure peril", "Pure income", "Pure health",
               "Health-income", "Total"},
              {}};
  cohort_engine engine(base, model, h);
  auto row = [&](const std::string& name, double d) {
    const ImpactDecomposition dec = engine.impact(d);
    t.rows.push_back({fmt::label(name), fmt::percent(d), fmt::multiple(dec.pure_peril),
                      fmt::multiple(dec.pure_income), fmt::multiple(dec.pure_health),
                      fmt::multiple(dec.health_income), fmt::multiple(dec.total)});
  };
  for (const auto& [name, d] : default_scenarios().entries) row(name, d);
  row("Break-even",
      breakeven_root([&engine](double d) { return engine.impact(d).total; }));
  return t;
}

inline table_doc table_onset(const ModelParams& base) {
  table_doc t{"9",
              "Returns under different onset assumptions (benchmark multiples)",
              {"Scenario", "d", "Onset in t1 years", "Onset next year"},
              {}};
  ModelParams delayed = base;
  ModelParams immediate = base;
  immediate.t1 = 1;
  auto total = [](ModelParams mp, double d) {
    mp.d = d;
    return impact_decomposition(mp).total;
  };
  auto row = [&](const std::string& name, double d) {
    t.rows.push_back({fmt::label(name), fmt::percent(d), fmt::multiple(total(delayed, d)),
                      fmt::multiple(total(immediate, d))});
  };
  for (const auto& [name, d] : default_scenarios().entries) row(name, d);
  row("Immediate peril break-even", breakeven_peril(base, onset_variant::immediate_onset));
  row("Delayed peril break-even", breakeven_peril(base));
  return t;
}

inline table_doc table_too_late(const ModelParams& base) {
  table_doc t{"10",
              "Returns if the time of perils cannot be delayed (benchmark multiples)",
              {"Scenario", "d", "Just in time", "Too late"},
              {}};
  ModelParams immediate = base;
  immediate.t1 = 1;
  auto row = [&](const std::string& name, double d) {
    ModelParams mi = immediate;
    mi.d = d;
    ModelParams mt = base;
    mt.d = d;
    t.rows.push_back({fmt::label(name), fmt::percent(d),
                      fmt::multiple(impact_decomposition(mi).total),
                      fmt::multiple(too_late_impact(mt).total)});
  };
  for (const auto& [name, d] : default_scenarios().entries) row(name, d);
  row("Immediate peril break-even", breakeven_peril(base, onset_variant::immediate_onset));
  row("Delayed peril break-even", breakeven_peril(base));
  return t;
}

inline table_doc table_breakeven_lambda(const ModelParams& base, const SurvivalModel* model,
                                        double h, double W) {
  table_doc t{"11",
              "Break-even value of the next epistemic regime (multiples of W)",
              {"Forecast", "dx", "Model", "Break-even lambda"},
              {}};
  auto rows_for = [&](const std::string& name, double d, double dx) {
    ModelParams mp = base;
    mp.d = d;
    t.rows.push_back({fmt::label(name), fmt::percent(dx, 5), fmt::label("Simplified health"),
                      fmt::plain(breakeven_lambda(mp, dx, W))});
    if (model != nullptr) {
      const double real_total = realistic_impact(mp, *model, h).total;
      t.rows.push_back({fmt::label(name), fmt::percent(dx, 5), fmt::label("Cohort health"),
                        fmt::plain(breakeven_lambda(mp, dx, W, real_total))});
    }
  };
  rows_for("Superforecasters", superforecaster_d, superforecaster_dx);
  rows_for("Domain experts", expert_d, expert_dx);
  return t;
}

inline table_doc table_utility_scaling(const ModelParams& base) {
  table_doc t{"12",
              "Relative gains when faster science also lowers the peril rate",
              {"Scenario", "d", "Utility multiple"},
              {}};
  const ReductionAnchors anchors;
  auto row = [&](const std::string& name, double d) {
    const double ratio = d == 0.0 ? 1.0 : utility_scaling(base, d, reduced_peril(d, anchors));
    t.rows.push_back({fmt::label(name), fmt::percent(d), fmt::ratio(ratio)});
  };
  for (const auto& [name, d] : default_scenarios().entries) row(name, d);
  const double be = breakeven_peril_better(base, anchors);
  t.rows.push_back({fmt::label("Break-even"), fmt::percent(be),
                    fmt::ratio(utility_scaling(base, be, anchors.factor() * be))});
  return t;
}

inline table_doc table_breakeven_lambda_better(const ModelParams& base,
                                               const SurvivalModel* model, double h, double W) {
  table_doc t{"13",
              "Break-even lambda when better science also cuts extinction risk",
              {"Forecast", "dx", "Model", "Break-even lambda"},
              {}};
  const ReductionAnchors anchors;
  auto rows_for = [&](const std::string& name, double d, double dx) {
    ModelParams mp = base;
    mp.d = d;
    const double dx_bar = anchors.factor() * dx;
    t.rows.push_back(
        {fmt::label(name), fmt::percent(dx, 5), fmt::label("Simplified health"),
         fmt::plain(breakeven_lambda_better(mp, dx, dx_bar, W,
                                            impact_decomposition(mp).total))});
    if (model != nullptr) {
      const double real_total = realistic_impact(mp, *model, h).total;
      t.rows.push_back({fmt::label(name), fmt::percent(dx, 5), fmt::label("Cohort health"),
                        fmt::plain(breakeven_lambda_better(mp, dx, dx_bar, W, real_total))});
    }
  };
  rows_for("Superforecasters", superforecaster_d, superforecaster_dx);
  rows_for("Domain experts", expert_d, expert_dx);
  return t;
}

// ---- calibration tables ----

inline table_doc table_annual_rates(const ForecastSet& supers, const ForecastSet& experts) {
  table_doc t{"A2",
              "Implied annual pandemic rates from cumulative forecasts",
              {"Forecast", "Group", "2023-2030", "2030-2050", "2050-2100"},
              {}};
  auto row = [&](const std::string& forecast, const std::string& group,
                 const std::map<int, double>& by) {
    const double p30 = by.at(2030), p50 = by.at(2050), p00 = by.at(2100);
    t.rows.push_back({fmt::label(forecast), fmt::label(group),
                      fmt::percent(annualize_cumulative(p30, 2030 - forecast_epoch), 2),
                      fmt::percent(interval_annual_rate(p30, p50, 2030, 2050), 2),
                      fmt::percent(interval_annual_rate(p50, p00, 2050, 2100), 2)});
  };
  row("Engineered pathogen kills >1%", "Superforecasters", supers.pandemic_by);
  row("Engineered pathogen kills >1%", "Domain experts", experts.pandemic_by);
  if (!supers.natural_pandemic_by.empty())
    row("Natural pathogen kills >1%", "Superforecasters", supers.natural_pandemic_by);
  if (!experts.natural_pandemic_by.empty())
    row("Natural pathogen kills >1%", "Domain experts", experts.natural_pandemic_by);
  return t;
}

inline table_doc table_preferred_rates(const PerilCalibration& supers,
                                       const PerilCalibration& experts) {
  table_doc t{"A3.5",
              "Preferred engineered-pandemic rates",
              {"Quantity", "Superforecasters", "Domain experts"},
              {}};
  t.rows.push_back({fmt::label("Baseline rate q0"), fmt::percent(supers.q0, 2),
                    fmt::percent(experts.q0, 2)});
  t.rows.push_back({fmt::label("Time-of-perils rate q1"), fmt::percent(supers.q1, 2),
                    fmt::percent(experts.q1, 2)});
  t.rows.push_back({fmt::label("Onset year"), fmt::number(supers.onset_year, "%.0f"),
                    fmt::number(experts.onset_year, "%.0f")});
  return t;
}

inline table_doc table_expected_mortality(const PerilCalibration& supers,
                                          const PerilCalibration& experts,
                                          const std::array<double, 4>& severities) {
  table_doc t{"A3.8",
              "Expected annual excess mortality by severity bucket",
              {"Group", "Period", "0-1%", "1-10%", "10-99.9%", "100%",
               "Expected mortality"},
              {}};
  auto row = [&](const std::string& group, const std::string& period,
                 const std::array<double, 4>& buckets) {
    t.rows.push_back({fmt::label(group), fmt::label(period), fmt::percent(buckets[0], 2),
                      fmt::percent(buckets[1], 2), fmt::percent(buckets[2], 4),
                      fmt::percent(buckets[3], 4),
                      fmt::percent(expected_annual_mortality(buckets, severities), 4)});
  };
  row("Superforecasters", "Baseline", supers.buckets_baseline);
  row("Superforecasters", "Time of perils", supers.buckets_perils);
  row("Domain experts", "Baseline", experts.buckets_baseline);
  row("Domain experts", "Time of perils", experts.buckets_perils);
  return t;
}

inline table_doc calibration_report(const PerilCalibration& cal, const std::string& group) {
  table_doc t{"calibration",
              "Calibration report: " + group,
              {"Quantity", "Value"},
              {}};
  auto add = [&](const std::string& name, table_cell cell) {
    t.rows.push_back({fmt::label(name), std::move(cell)});
  };
  add("Annual regime survival p", fmt::percent(cal.p_regime_annual, 2));
  add("Conditional pandemic by 2030", fmt::percent(cal.cond_pandemic_2030, 2));
  add("Conditional pandemic by 2050", fmt::percent(cal.cond_pandemic_2050, 2));
  add("Conditional pandemic by 2100", fmt::percent(cal.cond_pandemic_2100, 2));
  add("Conditional catastrophe by 2100", fmt::percent(cal.cond_catastrophe_2100, 2));
  add("Conditional extinction by 2100", fmt::percent(cal.cond_extinction_2100, 2));
  add("Solved baseline rate q0", fmt::percent(cal.q0_solved, 4));
  add("Solved perils rate q1", fmt::percent(cal.q1_solved, 4));
  add("Adopted baseline rate q0", fmt::percent(cal.q0, 4));
  add("Adopted perils rate q1", fmt::percent(cal.q1, 4));
  add("Post-2050 rate q2", fmt::percent(cal.q2, 4));
  add("Onset year", fmt::number(cal.onset_year, "%.0f"));
  add("Annual extinction rate x", fmt::percent(cal.x_annual, 5));
  add("Catastrophe share c", fmt::ratio(cal.c));
  add("Expected mortality, baseline", fmt::percent(cal.d_baseline, 4));
  add("Expected mortality, perils", fmt::percent(cal.d_perils, 4));
  add("Expected excess mortality d", fmt::percent(cal.d_excess, 4));
  return t;
}

// ---- renderers ----

inline std::string render_text(const table_doc& t) {
  std::vector<size_t> width(t.headers.size());
  for (size_t i = 0; i < t.headers.size(); ++i) width[i] = t.headers[i].size();
  for (const auto& row : t.rows)
    for (size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].display.size());

  std::string out = t.title + "\n";
  auto emit = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out += "\n";
  };
  emit(t.headers);
  size_t rule = 0;
  for (size_t i = 0; i < width.size(); ++i) rule += width[i] + (i + 1 < width.size() ? 2 : 0);
  out += std::string(rule, '-') + "\n";
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& c : row) cells.push_back(c.display);
    emit(cells);
  }
  return out;
}

inline std::string render_csv(const table_doc& t) {
  std::string out;
  for (size_t i = 0; i < t.headers.size(); ++i) {
    out += t.headers[i];
    out += i + 1 < t.headers.size() ? "," : "\n";
  }
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i].csv;
      out += i + 1 < row.size() ? "," : "\n";
    }
  }
  return out;
}

} // namespace perils
