#include <doctest.h>

#include <cmath>

#include "tempercore/ladder_opt.hpp"
#include "tempercore/math.hpp"

using namespace tempercore;

TEST_CASE("universal optimum of the temperature diffusion speed") {
  OptimalU opt = optimal_u();
  CHECK(opt.u_star == doctest::Approx(2.38).epsilon(5e-3));
  CHECK(opt.acc_star >= 0.2335);
  CHECK(opt.acc_star <= 0.2345);
  CHECK(opt.stationarity_residual < 1e-8);

  auto objective = [](double u) { return u * u * normal_cdf(-u / 2); };
  CHECK(objective(opt.u_star) > objective(0.9 * opt.u_star));
  CHECK(objective(opt.u_star) > objective(1.1 * opt.u_star));
}

TEST_CASE("speed function") {
  TemperedFamily fam = make_gaussian_family();
  CHECK(speed(fam, 0.7, 0.0) == doctest::Approx(0.0));

  TemperedFamily uni = make_uniform_family();
  CHECK(speed(uni, 0.5, 1.7) == doctest::Approx(1.7 * 1.7).epsilon(1e-9));

  OptimalU opt = optimal_u();
  double ell = opt.u_star / std::sqrt(0.5);
  CHECK(speed(fam, 1.0, ell) ==
        doctest::Approx(2.0 * ell * ell * normal_cdf(-opt.u_star / 2)).epsilon(1e-6));
}

TEST_CASE("acceptance-targeted rules invert the first-order formula") {
  TemperedFamily fam = make_gaussian_family();
  Evaluator full = ell_for_acceptance(fam, 1.0);
  CHECK(full(0.7) == doctest::Approx(0.0));

  for (double a : {0.1, 0.234, 0.5}) {
    Evaluator ell = ell_for_acceptance(fam, a);
    for (double b : {0.4, 0.7, 1.0}) {
      CHECK(acceptance_asymptotic(fam, b, ell(b)) == doctest::Approx(a).epsilon(1e-10));
    }
  }

  OptimalRule rule = optimal_rule(fam);
  Evaluator at_star = ell_for_acceptance(fam, rule.acc_star);
  for (double b : {0.4, 0.8}) {
    CHECK(at_star(b) == doctest::Approx(rule.u_star * std::sqrt(2.0) * b).epsilon(1e-5));
    CHECK(rule.ell_rule(b) * std::sqrt(1.0 / (2.0 * b * b)) ==
          doctest::Approx(rule.u_star).epsilon(1e-8));
  }

  // Degenerate families cannot hit a nontrivial acceptance target.
  TemperedFamily uni = make_uniform_family();
  Evaluator degenerate = ell_for_acceptance(uni, 0.234);
  CHECK_THROWS_AS(degenerate(0.5), input_error);
}

TEST_CASE("speed dominance of the optimal rule") {
  TemperedFamily fam = make_gaussian_family();
  OptimalRule rule = optimal_rule(fam);
  for (double b : {0.35, 0.6, 0.95}) {
    double best = speed(fam, b, rule.ell_rule(b));
    for (double scale : {0.5, 0.8, 1.2, 2.0}) {
      CHECK(best >= speed(fam, b, scale * rule.ell_rule(b)) - 1e-12);
    }
  }
}

TEST_CASE("u_star is family-independent") {
  OptimalU opt = optimal_u();
  TemperedFamily gauss = make_gaussian_family();
  TemperedFamily lap = make_laplace_family();
  for (const TemperedFamily* fam : {&gauss, &lap}) {
    double beta = 0.7;
    double root_i = std::sqrt(fam->moments(beta).I);
    double ell_hat = golden_section_maximize(
        [&](double ell) { return speed(*fam, beta, ell); }, 1e-3 / root_i,
        10.0 / root_i, 1e-10);
    CHECK(ell_hat * root_i == doctest::Approx(opt.u_star).epsilon(1e-6));
  }
}

TEST_CASE("large-d optimal ladders hit the optimal acceptance at every rung") {
  TemperedFamily fam = make_gaussian_family();
  OptimalRule rule = optimal_rule(fam);
  Ladder lad = optimal_ladder(fam, 1000000, 0.99);
  REQUIRE(lad.k_d() >= 2);
  for (std::size_t i = 0; i + 1 < lad.betas.size(); ++i) {
    CHECK(acceptance_asymptotic(fam, lad.betas[i], rule.ell_rule(lad.betas[i])) ==
          doctest::Approx(rule.acc_star).epsilon(1e-3));
  }
}

TEST_CASE("immediate stop yields a single rung") {
  TemperedFamily fam = make_gaussian_family();
  Ladder lad = optimal_ladder(fam, 100, 0.9999);
  CHECK(lad.k_d() == 0);
}
