#include <doctest.h>

#include <cmath>
#include <map>

#include "tempercore/birth_death.hpp"

using namespace tempercore;

namespace {

BirthDeathChain two_state(double p) {
  BirthDeathChain c;
  c.m = 1;
  c.S = 2.0;
  c.bounded_domain = true;
  c.states = {0.0, 1.0};
  c.up = {p, 0.0};
  c.down = {0.0, p};
  c.hold = {1.0 - p, 1.0 - p};
  c.pi_m = {0.5, 0.5};
  return c;
}

const Evaluator indicator = [](double x) { return x > 0.5 ? 1.0 : 0.0; };

}  // namespace

TEST_CASE("uniform target at m=4 gives the symmetric walk") {
  BirthDeathChain c = build_chain(make_uniform_target(0.0, 1.0), make_constant_sigma(1.0), 4);
  c.validate();
  CHECK(c.S == doctest::Approx(2.0));
  CHECK(c.size() == 5);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    CHECK(c.up[i] == doctest::Approx(0.5));
    CHECK(c.down[i] == doctest::Approx(0.5));
    CHECK(c.hold[i] == doctest::Approx(0.0));
  }
  CHECK(c.up.back() == 0.0);
  CHECK(c.down.front() == 0.0);
}

TEST_CASE("gaussian chain satisfies detailed balance") {
  BirthDeathChain c =
      build_chain(make_gaussian_target(-3.0, 3.0), make_constant_sigma(1.0), 10);
  c.validate();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    double lhs = c.pi_m[i] * c.up[i];
    double rhs = c.pi_m[i + 1] * c.down[i + 1];
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs));
  }
}

TEST_CASE("transition probabilities scale with sigma^2") {
  TargetDensity pi = make_gaussian_target(-3.0, 3.0);
  BirthDeathChain c1 = build_chain(pi, make_constant_sigma(1.0), 8);
  BirthDeathChain c2 = build_chain(pi, make_constant_sigma(0.5), 8);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1.up[i] >= c2.up[i] - 1e-15);
    CHECK(c1.down[i] >= c2.down[i] - 1e-15);
  }
}

TEST_CASE("exact asymptotic variance on two-state chains") {
  // Independent uniform flips: no autocorrelation, v = Var = 1/4.
  CHECK(exact_asymptotic_variance(two_state(0.5), indicator).v ==
        doctest::Approx(0.25).epsilon(1e-12));
  // Flip probability 0.9: geometric series with rho = -0.8 gives
  // 0.25 * (1 + 2 * (-0.8) / 1.8) = 1/36.
  CHECK(exact_asymptotic_variance(two_state(0.9), indicator).v ==
        doctest::Approx(1.0 / 36.0).epsilon(1e-12));
  // Constant functionals carry no variance.
  CHECK(exact_asymptotic_variance(two_state(0.9), [](double) { return 3.0; }).v ==
        doctest::Approx(0.0));
}

TEST_CASE("variance is nonnegative for lazy chains") {
  BirthDeathChain c =
      build_chain(make_gaussian_target(-3.0, 3.0), make_constant_sigma(0.8), 16);
  for (auto& f : {Evaluator([](double x) { return x; }),
                  Evaluator([](double x) { return std::sin(3 * x); })}) {
    CHECK(exact_asymptotic_variance(c, f).v >= 0.0);
  }
}

TEST_CASE("peskun dominance") {
  TargetDensity pi = make_gaussian_target(-3.0, 3.0);
  BirthDeathChain big = build_chain(pi, make_constant_sigma(1.0), 8);
  BirthDeathChain small = build_chain(pi, make_constant_sigma(0.5), 8);
  CHECK(peskun_dominates(big, small));
  CHECK(peskun_dominates(big, big));
  CHECK_FALSE(peskun_dominates(small, big));

  // Crossing volatilities: neither dominates.
  SigmaFunction s1;
  s1.sigma = [](double x) { return 0.6 + 0.3 * std::cos(x); };
  s1.dsigma = [](double x) { return -0.3 * std::sin(x); };
  s1.k_lo = 0.3;
  s1.k_hi = 0.9;
  SigmaFunction s2;
  s2.sigma = [](double x) { return 0.6 - 0.3 * std::cos(x); };
  s2.dsigma = [](double x) { return 0.3 * std::sin(x); };
  s2.k_lo = 0.3;
  s2.k_hi = 0.9;
  BirthDeathChain c1 = build_chain(pi, s1, 16);
  BirthDeathChain c2 = build_chain(pi, s2, 16);
  CHECK_FALSE(peskun_dominates(c1, c2));
  CHECK_FALSE(peskun_dominates(c2, c1));

  // Mismatched grids are incomparable.
  BirthDeathChain other = build_chain(pi, make_constant_sigma(1.0), 16);
  CHECK_THROWS_AS(peskun_dominates(big, other), incomparable_error);
}

TEST_CASE("dominance implies a variance ordering") {
  TargetDensity pi = make_gaussian_target(-3.0, 3.0);
  for (int m : {8, 16}) {
    BirthDeathChain big = build_chain(pi, make_constant_sigma(0.9), m);
    BirthDeathChain small = build_chain(pi, make_constant_sigma(0.6), m);
    REQUIRE(peskun_dominates(big, small));
    for (auto& f : {Evaluator([](double x) { return x; }),
                    Evaluator([](double x) { return x * x; }),
                    Evaluator([](double x) { return std::sin(x); }),
                    Evaluator([](double x) { return x > 0 ? 1.0 : 0.0; })}) {
      CHECK(exact_asymptotic_variance(big, f).v <=
            exact_asymptotic_variance(small, f).v + 1e-10);
    }
  }
}

TEST_CASE("spectral gap on two-state chains") {
  CHECK(gap_exact(two_state(0.5)) == doctest::Approx(1.0).epsilon(1e-12));
  for (double p : {0.2, 0.7, 0.9}) {
    CHECK(gap_exact(two_state(p)) == doctest::Approx(2.0 * p).epsilon(1e-12));
  }
}

TEST_CASE("gap decays like 1/m^2") {
  TargetDensity pi = make_uniform_target(0.0, 1.0);
  SigmaFunction s = make_constant_sigma(1.0);
  std::map<int, double> gap;
  for (int m : {8, 16, 32}) gap[m] = gap_exact(build_chain(pi, s, m));
  CHECK(gap[8] > 0.0);
  CHECK(gap[8] < 1.0);
  CHECK(gap[8] / gap[16] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(gap[16] / gap[32] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("gap lower bound closed forms") {
  // L=0, r=1, Q=1, k_lo=1, m=10: kappa = 1/20, bound = 0.00125.
  CHECK(gap_lower_bound(0.0, 1.0, 1.0, 1.0, 10, DomainKind::real_line) ==
        doctest::Approx(0.00125).epsilon(1e-12));
  CHECK(gap_lower_bound(0.0, 0.0, 1.0, 1.0, 10, DomainKind::bounded) ==
        doctest::Approx(0.00125).epsilon(1e-3));
  CHECK_THROWS_AS(gap_lower_bound(0.0, 1.0, -1.0, 1.0, 10, DomainKind::real_line),
                  input_error);
}

TEST_CASE("gap bound sits below the exact gap") {
  TargetDensity pi = make_gaussian_target(-3.0, 3.0);
  SigmaFunction s = make_constant_sigma(1.0);
  RegularityReport reg = check_regularity(pi, {8, 16, 32});
  for (int m : {8, 16, 32}) {
    BirthDeathChain c = build_chain(pi, s, m);
    CHECK(gap_exact(c) >= gap_lower_bound(3.0, 0.0, reg.Q, s.k_lo, m, DomainKind::bounded));
  }
}

TEST_CASE("speeded path step counts") {
  BirthDeathChain c = build_chain(make_uniform_target(0.0, 1.0), make_constant_sigma(1.0), 16);
  REQUIRE(c.S == doctest::Approx(2.0));
  SpeededPath tiny = sample_speeded_path(c, 1e-4, 1, 0);
  CHECK(tiny.indices.empty());
  CHECK(tiny.state_at(c, 0.0) == doctest::Approx(c.states[0]));
  SpeededPath p = sample_speeded_path(c, 1.0, 1, 0);
  CHECK(p.indices.size() == 256);  // floor(16^2 * 2 * 1 / 2)
}

TEST_CASE("long-run occupancy matches pi_m") {
  BirthDeathChain c = build_chain(make_uniform_target(0.0, 1.0), make_constant_sigma(1.0), 8);
  SpeededPath p = sample_speeded_path(c, 1000.0, 3, 4);
  std::vector<double> occ(c.size(), 0.0);
  for (auto idx : p.indices) occ[idx] += 1.0 / p.indices.size();
  double tv = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) tv += 0.5 * std::abs(occ[i] - c.pi_m[i]);
  CHECK(tv < 0.02);
}

TEST_CASE("constant-sigma scaling is a pure time change") {
  // For c >= 1 the normaliser S absorbs sigma exactly: the chain is identical
  // and the scaled variance picks up the 1/c^2 time-change factor.
  TargetDensity pi = make_gaussian_target(-3.0, 3.0);
  BirthDeathChain a = build_chain(pi, make_constant_sigma(1.0), 16);
  BirthDeathChain b = build_chain(pi, make_constant_sigma(2.0), 16);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.up[i] == doctest::Approx(b.up[i]).epsilon(1e-14));
    CHECK(a.down[i] == doctest::Approx(b.down[i]).epsilon(1e-14));
  }
  Evaluator f = [](double x) { return x; };
  double s1 = exact_asymptotic_variance(a, f).scaled;
  double s2 = exact_asymptotic_variance(b, f).scaled;
  CHECK(4.0 * s2 == doctest::Approx(s1).epsilon(1e-8));
}

TEST_CASE("real-line chains are truncated and renormalised") {
  TargetDensity lap = make_laplace_target(1.0, 1.0);
  RegularityReport reg = check_regularity(lap, {8});
  BirthDeathChain c = build_chain(lap, make_constant_sigma(1.0), 8, reg.q);
  c.validate();
  double total = 0;
  for (double w : c.pi_m) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.states.front() == doctest::Approx(-c.states.back()).epsilon(1e-12));
}
