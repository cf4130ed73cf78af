#include <catch2/catch_amalgamated.hpp>

#include "perils/better_science.hpp"
#include "perils/brute_force.hpp"
#include "test_support.hpp"

using Catch::Approx;
using namespace perils;

TEST_CASE("reduced peril rate") {
  const ReductionAnchors anchors;
  CHECK(anchors.factor() == Approx(72.8 / 72.99).epsilon(1e-15));
  CHECK(anchors.factor() == Approx(0.9974).margin(1e-4));
  CHECK(reduced_peril(0.0) == 0.0);
  CHECK(reduced_peril(0.000385) == Approx(0.9974 * 0.000385).epsilon(1e-3));
  // anchor provenance: 0.19 is the science share 0.56 of the 0.338 yr/yr gain
  CHECK(0.56 * 0.338 == Approx(0.19).margin(1e-3));
}

TEST_CASE("better science equals the baseline when d_bar = d") {
  testutil::lcg rng(31);
  for (int i = 0; i < 50; ++i) {
    ModelParams mp = testutil::random_params(rng);
    const double base = impact_decomposition(mp).total;
    const double d = mp.d;
    mp.d = 0.0; // better_science_impact takes d explicitly
    CHECK(better_science_impact(mp, d, d) == Approx(base).epsilon(1e-9).margin(1.0));
  }
}

TEST_CASE("better-science impact agrees with its direct-summation oracle") {
  testutil::lcg rng(77);
  for (int i = 0; i < 100; ++i) {
    ModelParams mp = testutil::random_params(rng);
    const double d = mp.d;
    const double d_bar = d * rng.uniform(0.5, 1.0);
    mp.d = 0.0;
    const double closed = better_science_impact(mp, d, d_bar);
    const double brute =
        brute_force_better_science(mp, d, d_bar, testutil::oracle_horizon(mp));
    CHECK(testutil::rel_diff(closed, brute, 1e-9 * (std::fabs(closed) + 1.0)) < 1e-6);
  }
}

TEST_CASE("utility scaling reference values") {
  const ModelParams mp; // defaults; d supplied per call
  const ReductionAnchors anchors;
  auto scaling = [&](double d) { return utility_scaling(mp, d, anchors.factor() * d); };
  CHECK(scaling(0.0) == Approx(1.0).margin(1e-12));
  CHECK(scaling(0.000021) == Approx(1.00).margin(0.01));
  CHECK(scaling(0.000385) == Approx(1.06).margin(0.01));
  CHECK(scaling(0.000385) == Approx(1.062815).margin(1e-4)); // frozen from the oracle

  SECTION("at least 1 whenever the reduction is real and the baseline is positive") {
    testutil::lcg rng(13);
    for (int i = 0; i < 60; ++i) {
      ModelParams rp = testutil::random_params(rng);
      const double d = rp.d;
      rp.d = 0.0;
      ModelParams at = rp;
      at.d = d;
      if (impact_decomposition(at).total <= 0.0) continue;
      const double ratio = utility_scaling(rp, d, 0.9 * d);
      CHECK(ratio >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("better-science break-even exceeds the baseline break-even") {
  const ModelParams mp;
  const double be_better = breakeven_peril_better(mp);
  CHECK(be_better == Approx(0.0018537842).margin(1e-9));
  CHECK(be_better > breakeven_peril(mp));
  // the 1e-12 bisection interval maps to only a few utils of residual
  CHECK(std::fabs(better_science_impact(mp, be_better, ReductionAnchors{}.factor() * be_better)) <
        10.0);
}

TEST_CASE("extinction improvement condition") {
  // at p = 0.98 the cut must reach ~2% before acceleration pays for itself
  CHECK_FALSE(extinction_improvement_condition(0.98, 0.0000016, 0.9974));
  CHECK(extinction_improvement_condition(0.98, 0.0000016, 0.0));
  CHECK_FALSE(extinction_improvement_condition(0.98, 1e-6, 1.0));
  CHECK(extinction_improvement_condition(0.98, 0.0000016, 0.979));
}

TEST_CASE("break-even lambda with risk-reducing science") {
  ModelParams sup;
  sup.d = 0.000021;
  ModelParams de;
  de.d = 0.000385;
  const double f = ReductionAnchors{}.factor();
  const double W = 16e9;

  const double lam_sup = breakeven_lambda_better(sup, 0.0000016, f * 0.0000016, W,
                                                 impact_decomposition(sup).total);
  CHECK(lam_sup == Approx(106681.09).margin(1.0));
  const double lam_de =
      breakeven_lambda_better(de, 0.0002286, f * 0.0002286, W, impact_decomposition(de).total);
  CHECK(lam_de == Approx(552.57).margin(0.05));

  SECTION("dx_bar = dx reduces to the plain break-even divided by p") {
    const double dx = 1e-6;
    const double plain = breakeven_lambda(sup, dx, W);
    const double same = breakeven_lambda_better(sup, dx, dx, W, impact_decomposition(sup).total);
    CHECK(same == Approx(plain / sup.p).epsilon(1e-9));
  }
  SECTION("no finite break-even when the reduction dominates") {
    // lambda_x far below p/(1+p dx): the extinction term is net positive
    CHECK_THROWS_AS(
        breakeven_lambda_better(sup, 0.0000016, 0.5 * 0.0000016, W,
                                impact_decomposition(sup).total),
        error);
  }
}

TEST_CASE("capability ratio") {
  CHECK(capability_ratio(0.5, 0.5, 0.0, 20.0, 0.0) == Approx(1.0).margin(1e-12));
  CHECK(capability_ratio(0.5, 0.5, 0.02, 20.0, 0.0) ==
        Approx(std::pow(1.02, 20.0)).epsilon(1e-12));
  // full leakage erases the lag advantage
  CHECK(capability_ratio(0.3, 0.6, 0.05, 30.0, 1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(capability_ratio(0.3, 0.6, 0.0, 10.0, 0.37) == Approx(0.5).epsilon(1e-12));

  SECTION("strictly increasing in g while leakage is partial") {
    for (double x : {0.0, 0.25, 0.9}) {
      double prev = 0.0;
      for (double g : {0.0, 0.01, 0.02, 0.05, 0.1}) {
        const double r = capability_ratio(0.4, 0.6, g, 25.0, x);
        CHECK(r > prev);
        prev = r;
      }
    }
  }
  SECTION("domain guards") {
    CHECK_THROWS_AS(capability_ratio(0.5, 0.0, 0.02, 20.0, 0.0), error);
    CHECK_THROWS_AS(capability_ratio(0.5, 0.5, 0.02, 20.0, 1.5), error);
  }
}
