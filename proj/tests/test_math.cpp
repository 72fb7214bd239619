#include <doctest.h>

#include <cmath>

#include "tempercore/math.hpp"
#include "tempercore/rng.hpp"

using namespace tempercore;

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
  for (double x : {-3.0, -1.5, -0.1, 0.0, 0.7, 2.5}) {
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK(normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
}

TEST_CASE("simpson rule") {
  const int n = 200;
  std::vector<double> vals(n + 1);
  for (int i = 0; i <= n; ++i) vals[i] = std::sin(M_PI * i / n);
  CHECK(simpson(vals, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("golden section and bisection") {
  double x = golden_section_maximize([](double t) { return -(t - 2.0) * (t - 2.0); },
                                     0.0, 5.0, 1e-10);
  CHECK(x == doctest::Approx(2.0).epsilon(1e-8));
  double r = bisect_root([](double t) { return t * t - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("chi-square survival function") {
  // dof = 2 has the closed form exp(-x/2).
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-10));
  }
  CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_sf(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("ks distances") {
  std::vector<double> u(1000);
  for (int i = 0; i < 1000; ++i) u[i] = (i + 0.5) / 1000.0;
  CHECK(ks_distance(u, [](double x) { return x; }) < 0.01);
  std::vector<double> v = u;
  CHECK(ks_distance_two_sample(u, v) == doctest::Approx(0.0));
}

TEST_CASE("rng determinism and seed splitting") {
  Rng a(42), b(42), c(43);
  bool same = true, differ = false;
  for (int i = 0; i < 100; ++i) {
    double xa = a.normal(), xb = b.normal(), xc = c.normal();
    same = same && (xa == xb);
    differ = differ || (xa != xc);
  }
  CHECK(same);
  CHECK(differ);
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
}

TEST_CASE("normal draws have correct first two moments") {
  Rng rng(7);
  const int n = 100000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
