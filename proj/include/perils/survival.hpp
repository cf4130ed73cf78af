#pragma once

/* Logistic survival curves fit to actuarial cohort life tables:
 *   share(age, birth_year) = 1 / (1 + exp(-(a + b*age + c*log(birth_year-1800))))
 * b < 0 (survival declines with age), c > 0 (later cohorts survive longer),
 * and nobody survives past age_cap. The global population is indexed to the
 * fitted national curve birth_offset years back.
 */

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "perils/errors.hpp"

namespace perils {

struct SurvivalModel {
  double a = 0.0;
  double b = 0.0;          // age coefficient
  double c = 0.0;          // log(birth_year - 1800) coefficient
  int age_cap = 120;
  double birth_offset = 24.0; // global birth year minus this indexes the fitted curve
  double rmse = 0.0;          // logit-space fit residual
  std::string source;
};

struct SurvivalObservation {
  double birth_year = 0.0;
  int age = 0;
  double share = 0.0;
};

inline double survival_share(const SurvivalModel& m, double birth_year, int age) {
  if (age < 0) raise(errc::domain, "age must be nonnegative");
  if (age > m.age_cap) return 0.0; // hard cap: no one survives past age_cap
  if (!(birth_year > 1800.0)) raise(errc::domain, "birth year must exceed 1800");
  const double z = m.a + m.b * double(age) + m.c * std::log(birth_year - 1800.0);
  return 1.0 / (1.0 + std::exp(-z));
}

// Expected years lived: sum of survival shares over ages 0..age_cap.
inline double life_expectancy(const SurvivalModel& m, double birth_year) {
  double sum = 0.0;
  for (int age = 0; age <= m.age_cap; ++age) sum += survival_share(m, birth_year, age);
  return sum;
}

// Least squares on logit-transformed shares; the model is linear in (a,b,c)
// after the transform, so the normal equations solve it exactly. Shares are
// clamped to [1e-6, 1-1e-6] before the transform.
inline SurvivalModel fit_survival(const std::vector<SurvivalObservation>& table) {
  std::set<double> birth_years;
  std::set<int> ages;
  for (const auto& obs : table) {
    if (!(obs.birth_year > 1800.0)) raise(errc::data, "birth years must exceed 1800");
    if (obs.age < 0) raise(errc::data, "ages must be nonnegative");
    if (!(obs.share >= 0.0 && obs.share <= 1.0)) raise(errc::data, "shares must lie in [0,1]");
    birth_years.insert(obs.birth_year);
    ages.insert(obs.age);
  }
  if (birth_years.size() < 2) raise(errc::data, "need at least two distinct birth years");
  if (ages.size() < 10) raise(errc::data, "need at least ten distinct ages");

  double xtx[3][3] = {};
  double xty[3] = {};
  double y_min = 1e300, y_max = -1e300;
  for (const auto& obs : table) {
    const double share = std::min(1.0 - 1e-6, std::max(1e-6, obs.share));
    const double y = std::log(share / (1.0 - share));
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
    const double x[3] = {1.0, double(obs.age), std::log(obs.birth_year - 1800.0)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) xtx[i][j] += x[i] * x[j];
      xty[i] += x[i] * y;
    }
  }
  if (y_max - y_min < 1e-12) raise(errc::data, "degenerate data: all shares equal");

  // 3x3 Gaussian elimination with partial pivoting
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = xtx[i][j];
    m[i][3] = xty[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-12) raise(errc::data, "degenerate data: singular design");
    for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
    }
  }

  SurvivalModel fit;
  fit.a = m[0][3] / m[0][0];
  fit.b = m[1][3] / m[1][1];
  fit.c = m[2][3] / m[2][2];

  double ss = 0.0;
  for (const auto& obs : table) {
    const double share = std::min(1.0 - 1e-6, std::max(1e-6, obs.share));
    const double y = std::log(share / (1.0 - share));
    const double pred = fit.a + fit.b * double(obs.age) + fit.c * std::log(obs.birth_year - 1800.0);
    ss += (y - pred) * (y - pred);
  }
  fit.rmse = std::sqrt(ss / double(table.size()));
  return fit;
}

// ---- actuarial input CSV: header `birth_year,age,share_alive` ----

inline std::vector<SurvivalObservation> parse_actuarial_csv(std::istream& in) {
  std::vector<SurvivalObservation> table;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!saw_header) {
      if (line.find("birth_year") == std::string::npos)
        raise(errc::data, "actuarial CSV must start with a birth_year,age,share_alive header");
      saw_header = true;
      continue;
    }
    SurvivalObservation obs;
    char trailing = 0;
    if (std::sscanf(line.c_str(), "%lf,%d,%lf%c", &obs.birth_year, &obs.age, &obs.share,
                    &trailing) < 3)
      raise(errc::data, "actuarial CSV line " + std::to_string(lineno) + ": expected 3 fields");
    table.push_back(obs);
  }
  if (table.empty()) raise(errc::data, "actuarial CSV holds no observations");
  return table;
}

inline std::vector<SurvivalObservation> load_actuarial_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::data, "cannot open actuarial CSV: " + path);
  return parse_actuarial_csv(in);
}

// ---- fitted-model file: `key=value` lines ----

inline void save_survival_model(const SurvivalModel& m, std::ostream& out) {
  out.precision(17);
  out << "a=" << m.a << "\n"
      << "b=" << m.b << "\n"
      << "c=" << m.c << "\n"
      << "offset=" << m.birth_offset << "\n"
      << "rmse=" << m.rmse << "\n"
      << "source=" << m.source << "\n";
}

inline void save_survival_model(const SurvivalModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::data, "cannot write fitted-model file: " + path);
  save_survival_model(m, out);
}

inline SurvivalModel parse_survival_model(std::istream& in) {
  SurvivalModel m;
  bool have_a = false, have_b = false, have_c = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "a") { m.a = std::stod(value); have_a = true; }
    else if (key == "b") { m.b = std::stod(value); have_b = true; }
    else if (key == "c") { m.c = std::stod(value); have_c = true; }
    else if (key == "offset") m.birth_offset = std::stod(value);
    else if (key == "rmse") m.rmse = std::stod(value);
    else if (key == "source") m.source = value;
  }
  if (!(have_a && have_b && have_c))
    raise(errc::data, "fitted-model file must define a, b and c");
  return m;
}

inline SurvivalModel load_survival_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::data, "cannot open fitted-model file: " + path);
  return parse_survival_model(in);
}

} // namespace perils
