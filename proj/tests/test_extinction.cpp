#include <catch2/catch_amalgamated.hpp>

#include "perils/extinction.hpp"
#include "test_support.hpp"

using Catch::Approx;
using namespace perils;

namespace {
ModelParams supers() {
  ModelParams mp;
  mp.d = 0.000021;
  return mp;
}
} // namespace

TEST_CASE("extinction adjustment vanishes without an extinction channel") {
  const ModelParams mp = supers();
  const double base = impact_decomposition(mp).total;
  ExtinctionParams ex;
  ex.dx = 0.0;
  ex.lambda = 1e6;
  CHECK(extinction_adjusted_impact(mp, ex) == Approx(base).epsilon(1e-15));
  ex.dx = 0.0000016;
  ex.lambda = 0.0;
  CHECK(extinction_adjusted_impact(mp, ex) == Approx(base).epsilon(1e-15));
}

TEST_CASE("break-even lambda zeroes the adjusted impact") {
  const ModelParams mp = supers();
  const double dx = 0.0000016;
  const double lambda = breakeven_lambda(mp, dx);
  CHECK(lambda == Approx(90957.36).margin(0.5));

  ExtinctionParams ex;
  ex.dx = dx;
  ex.lambda = lambda;
  const double adjusted = extinction_adjusted_impact(mp, ex);
  CHECK(std::fabs(adjusted) < 1e-6 * impact_decomposition(mp).total);

  SECTION("zero impact gives lambda zero") {
    ModelParams flat = mp;
    flat.d = 0.0;
    flat.g = flat.G;
    flat.s_bar = flat.s;
    CHECK(breakeven_lambda(flat, dx) == 0.0);
  }
  SECTION("undefined for dx = 0") {
    CHECK_THROWS_AS(breakeven_lambda(mp, 0.0), error);
  }
  SECTION("domain-expert value") {
    ModelParams de;
    de.d = 0.000385;
    CHECK(breakeven_lambda(de, 0.0002286) == Approx(471.90).margin(0.05));
  }
}

TEST_CASE("extinction penalty grows with dx and lambda") {
  const ModelParams mp = supers();
  double prev = -1.0;
  for (double dx : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
    const double pen = extinction_penalty(mp, dx, 1000.0, 16e9);
    CHECK(pen > prev);
    prev = pen;
  }
  prev = -1.0;
  for (double lambda : {1.0, 10.0, 100.0, 1000.0}) {
    const double pen = extinction_penalty(mp, 1e-5, lambda, 16e9);
    CHECK(pen > prev);
    prev = pen;
  }
}

TEST_CASE("discount factor for a given future value") {
  SECTION("published equivalences") {
    CHECK(rho_for_lambda(18967.0, 0.01) == Approx(0.999459665).margin(2e-9));
    // the companion prose quotes a ~1.4%/yr discount for lambda = 95; the
    // closed form gives exactly that, rho ~ 0.98582
    CHECK(rho_for_lambda(95.0, 0.01) == Approx(0.985815751).margin(2e-9));
  }
  SECTION("G = 0 collapses to the plain geometric sum") {
    CHECK(rho_for_lambda(100.0, 0.0) == Approx(0.99).margin(1e-12));
  }
  SECTION("no solution at or below lambda = 1") {
    CHECK_THROWS_AS(rho_for_lambda(1.0, 0.01), error);
    CHECK_THROWS_AS(rho_for_lambda(0.5, 0.01), error);
  }
  SECTION("strictly increasing in lambda and exact on the round trip") {
    double prev = 0.0;
    for (double lambda : {1.5, 5.0, 95.0, 472.0, 18967.0, 90964.0}) {
      const double rho = rho_for_lambda(lambda, 0.01);
      CHECK(rho > prev);
      CHECK(lambda_for_rho(rho, 0.01) == Approx(lambda).epsilon(1e-8));
      prev = rho;
    }
  }
}
