#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tempercore/math.hpp"
#include "tempercore/tempered_family.hpp"

using namespace tempercore;

// Gaussian base density f = exp(-x^2/2): closed forms
//   M(b) = -1/(2b),  I(b) = 1/(2b^2),  K(b) = log(b)/2 - log(2*pi)/2,
//   K'''(b) = -I'(b) = 1/b^3.

TEST_CASE("gaussian family moments match closed forms") {
  TemperedFamily fam = make_gaussian_family();
  Moments m1 = fam.moments(1.0);
  CHECK(m1.M == doctest::Approx(-0.5).epsilon(1e-7));
  CHECK(m1.I == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(m1.K == doctest::Approx(-0.5 * kLogTwoPi).epsilon(1e-7));
  CHECK(fam.moments(0.5).I == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(fam.moments(0.25).M == doctest::Approx(-2.0).epsilon(1e-7));
}

TEST_CASE("uniform family is fully degenerate") {
  TemperedFamily fam = make_uniform_family();
  for (double b : {0.2, 0.7, 1.0}) {
    Moments m = fam.moments(b);
    CHECK(m.M == doctest::Approx(0.0));
    CHECK(m.I == doctest::Approx(0.0));
    CHECK(m.K == doctest::Approx(0.0));
    CHECK(fam.third_derivative_k(b) == doctest::Approx(0.0));
  }
}

TEST_CASE("double-exponential base has K(1) = -log 2") {
  TemperedFamily fam([](double x) { return -std::abs(x); },
                     Domain::real_line(0.5, 1.0), 2048);
  CHECK(fam.moments(1.0).K == doctest::Approx(-std::log(2.0)).epsilon(1e-7));
}

TEST_CASE("third derivative of K") {
  TemperedFamily fam = make_gaussian_family();
  CHECK(fam.third_derivative_k(1.0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(fam.third_derivative_k(0.5) == doctest::Approx(8.0).epsilon(1e-4));
}

TEST_CASE("derivative identities M' = I and K' = -M") {
  TemperedFamily fam = make_gaussian_family();
  const double h = 1e-4;
  for (double b : {0.3, 0.5, 0.7, 0.9}) {
    Moments lo = fam.moments(b - h), hi = fam.moments(b + h), mid = fam.moments(b);
    double dM = (hi.M - lo.M) / (2 * h);
    double dK = (hi.K - lo.K) / (2 * h);
    CHECK(std::abs(dM - mid.I) <= 1e-3 * (1 + std::abs(mid.I)));
    CHECK(std::abs(dK + mid.M) <= 1e-3 * (1 + std::abs(mid.M)));
  }
}

TEST_CASE("quadrature is grid-consistent") {
  TemperedFamily coarse = make_gaussian_family(2048);
  TemperedFamily fine = make_gaussian_family(4096);
  for (double b : {0.3, 1.0}) {
    Moments a = coarse.moments(b), c = fine.moments(b);
    CHECK(std::abs(a.M - c.M) <= 1e-6 * (1 + std::abs(c.M)));
    CHECK(std::abs(a.I - c.I) <= 1e-6 * (1 + std::abs(c.I)));
    CHECK(std::abs(a.K - c.K) <= 1e-6 * (1 + std::abs(c.K)));
  }
}

TEST_CASE("non-finite log density is rejected") {
  CHECK_THROWS_AS(TemperedFamily([](double x) { return std::log(x); },
                                 Domain::bounded(0.0, 1.0), 256),
                  input_error);
}

TEST_CASE("sampling matches the moments") {
  TemperedFamily fam = make_gaussian_family();
  const std::size_t n = 100000;

  // beta = 1: mean of g within the CLT band around M(1) = -0.5.
  std::vector<double> xs = fam.sample(1.0, n, 11);
  double gsum = 0;
  for (double x : xs) gsum += -0.5 * x * x;
  CHECK(std::abs(gsum / n + 0.5) < 3.0 * std::sqrt(0.5 / n));

  // beta = 0.25: sample variance of x near 1/beta = 4.
  xs = fam.sample(0.25, n, 12);
  double s = 0, s2 = 0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::abs(var - 4.0) < 3.0 * 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("uniform family samples are uniform") {
  TemperedFamily fam = make_uniform_family();
  std::vector<double> xs = fam.sample(0.7, 10000, 5);
  CHECK(ks_distance(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.02);
}

TEST_CASE("sampling is deterministic given the seed") {
  TemperedFamily fam = make_gaussian_family();
  CHECK(fam.sample(0.5, 100, 99) == fam.sample(0.5, 100, 99));
  CHECK(fam.sample(0.5, 100, 99) != fam.sample(0.5, 100, 98));
}

TEST_CASE("table family reproduces its generator") {
  std::vector<double> x, g;
  for (int i = 0; i <= 400; ++i) {
    double t = -6.0 + 12.0 * i / 400.0;
    x.push_back(t);
    g.push_back(-0.5 * t * t);
  }
  TemperedFamily fam = make_table_family(x, g);
  CHECK(fam.moments(1.0).M == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(fam.moments(1.0).I == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("regularity reports") {
  TargetDensity gauss = make_gaussian_target(-3.0, 3.0);
  RegularityReport r = check_regularity(gauss, {8, 16, 32});
  CHECK(r.L_hat > 2.9);
  CHECK(r.L_hat <= 3.0 + 1e-9);
  CHECK(r.Q > 0);

  TargetDensity uni = make_uniform_target(0.0, 1.0);
  RegularityReport ru = check_regularity(uni, {8});
  CHECK(ru.L_hat == doctest::Approx(0.0));
  CHECK(ru.Q == doctest::Approx(1.0).epsilon(1e-9));

  TargetDensity lap = make_laplace_target(1.0, 1.0);
  RegularityReport rl = check_regularity(lap, {10, 20});
  CHECK(rl.tail_ok);
  CHECK(std::isfinite(rl.q));
  CHECK(rl.q >= 1.0);
}
