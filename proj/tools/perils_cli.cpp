/* Command-line surface for the welfare model: scenario evaluation, reference
 * table regeneration, forecast calibration, survival fitting, break-even
 * solving, and parameter sweeps.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "perils/better_science.hpp"
#include "perils/brute_force.hpp"
#include "perils/calibration.hpp"
#include "perils/cohort.hpp"
#include "perils/config.hpp"
#include "perils/extinction.hpp"
#include "perils/model.hpp"
#include "perils/presets.hpp"
#include "perils/roi.hpp"
#include "perils/survival.hpp"
#include "perils/tables.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

std::string data_dir() {
  if (const char* env = std::getenv("PERILS_DATA_DIR"); env != nullptr && *env != '\0')
    return env;
  return "data";
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) perils::raise(perils::errc::config, "cannot open output file: " + out_path);
  out << text;
}

int exit_code_for(const perils::error& e) {
  switch (e.code()) {
    case perils::errc::no_root:
    case perils::errc::no_convergence:
      return exit_solver;
    default:
      return exit_config;
  }
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "text";
  std::string preset = "none";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config file (key = value lines)");
  cmd->add_option("--out", opts.out_path, "write output to this file instead of stdout");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "csv"}));
  cmd->add_option("--preset", opts.preset, "forecast preset")
      ->check(CLI::IsMember({"superforecasters", "experts", "none"}));
}

perils::ScenarioConfig resolve_config(const CommonOpts& opts) {
  perils::ScenarioConfig cfg;
  if (!opts.config_path.empty()) cfg = perils::load_config(opts.config_path);
  if (opts.preset == "superforecasters") {
    cfg.params.d = perils::superforecaster_d;
    cfg.dx = perils::superforecaster_dx;
    cfg.onset_year = perils::superforecaster_onset;
  } else if (opts.preset == "experts") {
    cfg.params.d = perils::expert_d;
    cfg.dx = perils::expert_dx;
    cfg.onset_year = perils::expert_onset;
  }
  return cfg;
}

perils::ForecastSet resolve_forecasts(const CommonOpts& opts,
                                      const perils::ScenarioConfig& cfg) {
  if (!cfg.forecast_file.empty()) return perils::load_forecast_csv(cfg.forecast_file);
  if (opts.preset == "experts") return perils::expert_forecasts();
  return perils::superforecaster_forecasts();
}

std::string render(const perils::table_doc& t, const std::string& format) {
  return format == "csv" ? perils::render_csv(t) : perils::render_text(t);
}

perils::SurvivalModel load_fitted_model() {
  const std::string path = data_dir() + "/fitted_survival.txt";
  std::ifstream probe(path);
  if (!probe)
    perils::raise(perils::errc::data,
                  "missing fitted-survival file: " + path +
                      " (run `perils fit-survival` or set PERILS_DATA_DIR)");
  return perils::load_survival_model(path);
}

int run_table(const std::string& id, const CommonOpts& opts) {
  const perils::ScenarioConfig cfg = resolve_config(opts);
  perils::table_doc t;
  if (id == "7") {
    t = perils::table_baseline(cfg.params);
  } else if (id == "8") {
    const perils::SurvivalModel model = load_fitted_model();
    t = perils::table_realistic(cfg.params, model, cfg.h);
  } else if (id == "9") {
    t = perils::table_onset(cfg.params);
  } else if (id == "10") {
    t = perils::table_too_late(cfg.params);
  } else if (id == "11" || id == "13") {
    const perils::SurvivalModel model = load_fitted_model();
    t = id == "11"
            ? perils::table_breakeven_lambda(cfg.params, &model, cfg.h, cfg.W)
            : perils::table_breakeven_lambda_better(cfg.params, &model, cfg.h, cfg.W);
  } else if (id == "12") {
    t = perils::table_utility_scaling(cfg.params);
  } else if (id == "A2") {
    t = perils::table_annual_rates(perils::superforecaster_forecasts(),
                                   perils::expert_forecasts());
  } else if (id == "A3.5" || id == "A3.8") {
    const perils::ForecastSet sup = perils::superforecaster_forecasts();
    const perils::ForecastSet exp = perils::expert_forecasts();
    const perils::PerilCalibration cs = perils::calibrate(sup, sup.onset_year);
    const perils::PerilCalibration ce = perils::calibrate(exp, exp.onset_year);
    t = id == "A3.5" ? perils::table_preferred_rates(cs, ce)
                     : perils::table_expected_mortality(cs, ce, perils::default_severities());
  } else {
    perils::raise(perils::errc::config, "unknown table id: " + id);
  }
  write_out(render(t, opts.format), opts.out_path);
  return exit_ok;
}

perils::ImpactDecomposition evaluate_variant(const perils::ScenarioConfig& cfg) {
  if (cfg.variant == "baseline") return perils::impact_decomposition(cfg.params);
  if (cfg.variant == "immediate") {
    perils::ModelParams mp = cfg.params;
    mp.t1 = 1;
    return perils::impact_decomposition(mp);
  }
  if (cfg.variant == "too-late") return perils::too_late_impact(cfg.params);
  if (cfg.variant == "realistic")
    return perils::realistic_impact(cfg.params, load_fitted_model(), cfg.h);
  if (cfg.variant == "better") {
    const double d_bar = perils::reduced_peril(cfg.params.d);
    perils::ImpactDecomposition dec;
    dec.total = perils::better_science_impact(cfg.params, cfg.params.d, d_bar);
    return dec;
  }
  perils::raise(perils::errc::config, "unknown variant: " + cfg.variant);
}

int run_evaluate(const CommonOpts& opts) {
  const perils::ScenarioConfig cfg = resolve_config(opts);
  const perils::ImpactDecomposition dec = evaluate_variant(cfg);
  perils::table_doc t{"evaluate",
                      "Scenario impact (" + cfg.variant + ")",
                      {"Component", "Utils", "Benchmark multiple"},
                      {}};
  auto row = [&](const char* name, double utils) {
    t.rows.push_back({perils::fmt::label(name), perils::fmt::number(utils, "%.6e"),
                      perils::fmt::number(perils::to_op_multiple(utils), "%.2f")});
  };
  if (cfg.variant != "better") {
    row("Pure peril", dec.pure_peril);
    row("Pure income", dec.pure_income);
    row("Pure health", dec.pure_health);
    row("Health-income", dec.health_income);
  }
  row("Total", dec.total);
  if (cfg.dx > 0.0 && cfg.lambda > 0.0)
    row("Extinction-adjusted total",
        dec.total - perils::extinction_penalty(cfg.params, cfg.dx, cfg.lambda, cfg.W));
  write_out(render(t, opts.format), opts.out_path);
  return exit_ok;
}

int run_breakeven(const std::string& target, const CommonOpts& opts) {
  const perils::ScenarioConfig cfg = resolve_config(opts);
  perils::table_doc t{"breakeven", "Break-even solution", {"Target", "Value"}, {}};
  if (target == "d") {
    double d_star = 0.0;
    if (cfg.variant == "realistic")
      d_star = perils::realistic_breakeven(cfg.params, load_fitted_model(), cfg.h);
    else if (cfg.variant == "immediate")
      d_star = perils::breakeven_peril(cfg.params, perils::onset_variant::immediate_onset);
    else if (cfg.variant == "better")
      d_star = perils::breakeven_peril_better(cfg.params);
    else
      d_star = perils::breakeven_peril(cfg.params);
    t.rows.push_back({perils::fmt::label("d"), perils::fmt::percent(d_star)});
  } else if (target == "lambda") {
    double total = cfg.variant == "realistic"
                       ? perils::realistic_impact(cfg.params, load_fitted_model(), cfg.h).total
                       : perils::impact_decomposition(cfg.params).total;
    const double lambda = perils::breakeven_lambda(cfg.params, cfg.dx, cfg.W, total);
    t.rows.push_back({perils::fmt::label("lambda"), perils::fmt::number(lambda, "%.1f")});
  } else if (target == "rho") {
    if (!(cfg.lambda > 0.0))
      perils::raise(perils::errc::config, "breakeven --target rho needs lambda in the config");
    const double rho = perils::rho_for_lambda(cfg.lambda, cfg.params.G);
    t.rows.push_back({perils::fmt::label("rho"), perils::fmt::number(rho, "%.7f")});
  } else {
    perils::raise(perils::errc::config, "unknown break-even target: " + target);
  }
  write_out(render(t, opts.format), opts.out_path);
  return exit_ok;
}

int run_calibrate(const CommonOpts& opts, std::optional<int> onset_override) {
  const perils::ScenarioConfig cfg = resolve_config(opts);
  const perils::ForecastSet fs = resolve_forecasts(opts, cfg);
  const int onset = onset_override.value_or(fs.onset_year);
  const perils::PerilCalibration cal = perils::calibrate(fs, onset);
  write_out(render(perils::calibration_report(cal, fs.group), opts.format), opts.out_path);
  return exit_ok;
}

int run_fit_survival(const CommonOpts& opts, std::string csv_path, std::string model_out) {
  if (csv_path.empty()) csv_path = data_dir() + "/actuarial_survival.csv";
  auto table = perils::load_actuarial_csv(csv_path);
  perils::SurvivalModel fit = perils::fit_survival(table);
  fit.source = "fit of " + csv_path + " (logit-space least squares)";
  if (!model_out.empty()) perils::save_survival_model(fit, model_out);

  perils::table_doc t{"fit", "Fitted survival curve", {"Coefficient", "Value"}, {}};
  t.rows.push_back({perils::fmt::label("a"), perils::fmt::number(fit.a, "%.10g")});
  t.rows.push_back({perils::fmt::label("b"), perils::fmt::number(fit.b, "%.10g")});
  t.rows.push_back({perils::fmt::label("c"), perils::fmt::number(fit.c, "%.10g")});
  t.rows.push_back({perils::fmt::label("offset"), perils::fmt::number(fit.birth_offset, "%.10g")});
  t.rows.push_back({perils::fmt::label("rmse"), perils::fmt::number(fit.rmse, "%.6e")});
  t.rows.push_back(
      {perils::fmt::label("observations"), perils::fmt::number(double(table.size()), "%.0f")});
  write_out(render(t, opts.format), opts.out_path);
  return exit_ok;
}

int run_sweep(const std::string& param, double from, double to, int steps,
              const CommonOpts& opts) {
  if (steps < 2) perils::raise(perils::errc::config, "sweep needs at least 2 steps");
  if (!(to >= from)) perils::raise(perils::errc::config, "sweep range must be nondecreasing");
  const perils::ScenarioConfig cfg = resolve_config(opts);

  perils::table_doc t{"sweep",
                      "Sweep over " + param,
                      {"param", "value", "pure_peril", "pure_income", "pure_health",
                       "health_income", "total", "multiple"},
                      {}};
  for (int i = 0; i < steps; ++i) {
    const double value = from + (to - from) * double(i) / double(steps - 1);
    perils::ScenarioConfig point = cfg;
    if (param == "p") point.params.p = value;
    else if (param == "G") point.params.G = value;
    else if (param == "g") point.params.g = value;
    else if (param == "T") point.params.T = int(value);
    else if (param == "t1") point.params.t1 = int(value);
    else if (param == "n0") point.params.n0 = value;
    else if (param == "s") point.params.s = value;
    else if (param == "s_bar") point.params.s_bar = value;
    else if (param == "d") point.params.d = value;
    else if (param == "dx") point.dx = value;
    else if (param == "W") point.W = value;
    else if (param == "lambda") point.lambda = value;
    else perils::raise(perils::errc::config, "unknown sweep parameter: " + param);

    perils::ImpactDecomposition dec = evaluate_variant(point);
    double total = dec.total;
    if (param == "dx" || param == "lambda" || param == "W")
      total -= perils::extinction_penalty(point.params, point.dx, point.lambda, point.W);
    t.rows.push_back({perils::fmt::label(param), perils::fmt::number(value, "%.8g"),
                      perils::fmt::number(dec.pure_peril, "%.6e"),
                      perils::fmt::number(dec.pure_income, "%.6e"),
                      perils::fmt::number(dec.pure_health, "%.6e"),
                      perils::fmt::number(dec.health_income, "%.6e"),
                      perils::fmt::number(total, "%.6e"),
                      perils::fmt::number(perils::to_op_multiple(total), "%.4f")});
  }
  write_out(render(t, opts.format), opts.out_path);
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social returns to a marginal year of science under technological risk"};
  app.require_subcommand(1);

  CommonOpts table_opts, eval_opts, be_opts, cal_opts, fit_opts, sweep_opts;

  std::string table_id;
  CLI::App* cmd_table = app.add_subcommand("table", "regenerate a reference table");
  cmd_table->add_option("id", table_id, "table id: 7 8 9 10 11 12 13 A2 A3.5 A3.8")->required();
  add_common(cmd_table, table_opts);

  CLI::App* cmd_eval = app.add_subcommand("evaluate", "evaluate one scenario");
  add_common(cmd_eval, eval_opts);

  std::string be_target = "d";
  CLI::App* cmd_be = app.add_subcommand("breakeven", "solve a break-even quantity");
  cmd_be->add_option("--target", be_target, "d, lambda, or rho")
      ->check(CLI::IsMember({"d", "lambda", "rho"}));
  add_common(cmd_be, be_opts);

  std::optional<int> onset_override;
  CLI::App* cmd_cal = app.add_subcommand("calibrate", "run the forecast calibration pipeline");
  cmd_cal->add_option("--onset", onset_override, "override the perils onset year");
  add_common(cmd_cal, cal_opts);

  std::string fit_csv, fit_out;
  CLI::App* cmd_fit = app.add_subcommand("fit-survival", "fit the survival curve to a life table");
  cmd_fit->add_option("--data", fit_csv, "actuarial CSV (birth_year,age,share_alive)");
  cmd_fit->add_option("--model-out", fit_out, "write the fitted-model file here");
  add_common(cmd_fit, fit_opts);

  std::string sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 0;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "evaluate a scenario over a parameter grid");
  cmd_sweep->add_option("--param", sweep_param, "parameter to sweep")->required();
  cmd_sweep->add_option("--from", sweep_from, "start value")->required();
  cmd_sweep->add_option("--to", sweep_to, "end value")->required();
  cmd_sweep->add_option("--steps", sweep_steps, "grid points")->required();
  add_common(cmd_sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  try {
    if (cmd_table->parsed()) return run_table(table_id, table_opts);
    if (cmd_eval->parsed()) return run_evaluate(eval_opts);
    if (cmd_be->parsed()) return run_breakeven(be_target, be_opts);
    if (cmd_cal->parsed()) return run_calibrate(cal_opts, onset_override);
    if (cmd_fit->parsed()) return run_fit_survival(fit_opts, fit_csv, fit_out);
    if (cmd_sweep->parsed())
      return run_sweep(sweep_param, sweep_from, sweep_to, sweep_steps, sweep_opts);
  } catch (const perils::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
