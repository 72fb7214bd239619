#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tempercore {

inline constexpr double kLogTwoPi = 1.8378770664093454836;

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Standard normal density.
inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// Standard normal quantile (Acklam's rational approximation, Halley-polished).
double normal_quantile(double p);

/// Composite Simpson rule on a uniform grid of n+1 values over [lo, hi]; n even.
double simpson(const std::vector<double>& values, double lo, double hi);

/// Two-sample / sample-vs-CDF Kolmogorov-Smirnov distances. Inputs need not be sorted.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

/// Maximise a unimodal function on [lo, hi] by golden-section search.
/// Returns the abscissa of the maximum to within tol.
double golden_section_maximize(const std::function<double(double)>& f, double lo,
                               double hi, double tol);

/// Root of a continuous function on a sign-changing bracket, by bisection.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   int max_iter = 200);

/// Upper tail P(X > x) of a chi-square distribution with dof degrees of freedom.
double chi_square_sf(double x, int dof);

}  // namespace tempercore
