#include "tempercore/ladder_opt.hpp"

#include <cmath>

#include "tempercore/math.hpp"

namespace tempercore {

double speed(const TemperedFamily& family, double beta, double ell_val) {
  if (!(ell_val >= 0)) throw input_error("speed: ell_val must be >= 0");
  const double I = std::max(family.moments(beta).I, 0.0);
  return 2.0 * ell_val * ell_val * normal_cdf(-0.5 * ell_val * std::sqrt(I));
}

OptimalU optimal_u() {
  auto objective = [](double u) { return u * u * normal_cdf(-0.5 * u); };
  // Stationarity of the objective: 2 Phi(-u/2) = (u/2) phi(u/2).
  auto residual = [](double u) {
    return 2.0 * normal_cdf(-0.5 * u) - 0.5 * u * normal_pdf(0.5 * u);
  };
  double u = golden_section_maximize(objective, 1e-3, 10.0, 1e-9);
  // The objective is flat at its maximum; a bisection on the stationarity
  // equation pins the root to machine precision.
  u = bisect_root(residual, u - 1e-3, u + 1e-3);
  OptimalU out;
  out.u_star = u;
  out.acc_star = 2.0 * normal_cdf(-0.5 * u);
  out.stationarity_residual = std::abs(residual(u));
  return out;
}

Evaluator ell_for_acceptance(const TemperedFamily& family, double a) {
  if (!(a > 0 && a <= 1)) throw input_error("ell_for_acceptance: a must lie in (0, 1]");
  const double c = 2.0 * normal_quantile(1.0 - 0.5 * a);
  const TemperedFamily* fam = &family;
  return [fam, c](double beta) {
    const double I = fam->moments(beta).I;
    if (I < 1e-12)
      throw input_error("ell_for_acceptance: degenerate family (I = 0) at this beta");
    return c / std::sqrt(I);
  };
}

OptimalRule optimal_rule(const TemperedFamily& family) {
  OptimalU u = optimal_u();
  OptimalRule rule;
  rule.u_star = u.u_star;
  rule.acc_star = u.acc_star;
  const TemperedFamily* fam = &family;
  const double ustar = u.u_star;
  rule.ell_rule = [fam, ustar](double beta) {
    const double I = fam->moments(beta).I;
    if (I < 1e-12)
      throw input_error("optimal_rule: degenerate family (I = 0) at this beta");
    return ustar / std::sqrt(I);
  };
  return rule;
}

Ladder optimal_ladder(const TemperedFamily& family, int d, double chi) {
  return build_ladder(optimal_rule(family).ell_rule, d, chi);
}

}  // namespace tempercore
