#pragma once

#include "tempercore/domain.hpp"
#include "tempercore/tempering.hpp"

namespace tempercore {

/// Universal optimiser of the temperature diffusion speed: the maximiser
/// u_star of u^2 Phi(-u/2), the corresponding acceptance rate
/// acc_star = 2 Phi(-u_star/2), and the rule ell(beta) = u_star / sqrt(I(beta)).
struct OptimalRule {
  double u_star = 0.0;
  double acc_star = 0.0;
  Evaluator ell_rule;
};

/// Diffusion speed 2 ell^2 Phi(-ell sqrt(I(beta)) / 2) at one rung.
double speed(const TemperedFamily& family, double beta, double ell_val);

/// u_star by golden-section search on [1e-3, 10], polished to the root of
/// the stationarity equation 2 Phi(-u/2) = (u/2) phi(u/2).
struct OptimalU {
  double u_star = 0.0;
  double acc_star = 0.0;
  double stationarity_residual = 0.0;
};
OptimalU optimal_u();

/// The ell rule hitting first-order acceptance a at every beta:
/// ell(beta) = 2 PhiInv(1 - a/2) / sqrt(I(beta)).
Evaluator ell_for_acceptance(const TemperedFamily& family, double a);

OptimalRule optimal_rule(const TemperedFamily& family);

/// Ladder built from the speed-maximising rule.
Ladder optimal_ladder(const TemperedFamily& family, int d, double chi);

}  // namespace tempercore
