#pragma once

#include <cstdint>
#include <vector>

#include "tempercore/domain.hpp"

namespace tempercore {

/// State-dependent volatility, C^1, bounded between k_lo and k_hi.
struct SigmaFunction {
  Evaluator sigma;
  Evaluator dsigma;
  double k_lo = 1.0;
  double k_hi = 1.0;
};

SigmaFunction make_constant_sigma(double c);

/// Nearest-neighbour discretisation of a Langevin diffusion on the grid
/// {i/m}: up/down probabilities scaled by sigma^2 and the density ratio,
/// hold by complement, reversible with respect to pi restricted to the grid.
struct BirthDeathChain {
  int m = 1;
  double S = 0.0;  // normaliser making up + down <= 1 everywhere
  bool bounded_domain = true;
  std::vector<double> states;  // i/m, increasing
  std::vector<double> up;      // up.back() == 0
  std::vector<double> down;    // down.front() == 0
  std::vector<double> hold;
  std::vector<double> pi_m;    // normalised stationary law on the states

  std::size_t size() const { return states.size(); }

  /// Detailed balance, row sums, and nonnegativity; throws structure_error.
  void validate() const;
};

/// Exact asymptotic variance of f along the chain, with the scaling that has
/// a diffusion limit as m grows.
struct VarianceReport {
  double v = 0.0;       // sum over all lags of the stationary autocovariance
  double scaled = 0.0;  // 2 v / (m^2 S)
  int m = 1;
  double S = 0.0;
};

/// Build the chain for target pi and volatility sigma at resolution m. For
/// real-line targets the state space is truncated to |i/m| <= truncation_q
/// and pi_m renormalised over the retained states. sigma_bar overrides the
/// volatility bound entering the normaliser S (defaults to sigma.k_hi); two
/// chains built with the same sigma_bar share a clock, which makes their
/// transition probabilities directly comparable.
BirthDeathChain build_chain(const TargetDensity& pi, const SigmaFunction& sigma, int m,
                            double truncation_q = 0.0, double sigma_bar = 0.0);

/// Exact asymptotic variance of f by solving the Poisson equation
/// (Id - P) u = f - pi(f) with a dense factorisation.
VarianceReport exact_asymptotic_variance(const BirthDeathChain& chain, const Evaluator& f);

/// True iff c1's off-diagonal transition probabilities dominate c2's
/// everywhere. Requires identical grids and stationary laws.
bool peskun_dominates(const BirthDeathChain& c1, const BirthDeathChain& c2);

/// Exact spectral gap 1 - lambda_2 of the reversible transition matrix,
/// through its symmetrisation.
double gap_exact(const BirthDeathChain& chain);

enum class DomainKind { bounded, real_line };

/// Capacitance-based lower bound kappa^2/2 on the spectral gap, from the
/// certified constants (L, r, Q, k_lo).
double gap_lower_bound(double L, double r, double Q, double k_lo, int m, DomainKind kind);

/// Discrete path of the chain run for floor(m^2 S T / 2) steps, reported on
/// the diffusive time scale.
struct SpeededPath {
  double T = 0.0;
  int m = 1;
  double S = 0.0;
  std::size_t start_index = 0;
  std::vector<std::uint32_t> indices;  // state index after each step

  /// State at diffusive time t via the floor index map.
  double state_at(const BirthDeathChain& chain, double t) const;
};

/// Simulate the speeded-up chain from state index start for diffusive
/// duration T. Deterministic given seed.
SpeededPath sample_speeded_path(const BirthDeathChain& chain, double T, std::uint64_t seed,
                                std::size_t start_index);

/// Final state index only (no path storage); same dynamics and seeding.
std::size_t run_chain_steps(const BirthDeathChain& chain, std::size_t n_steps,
                            std::uint64_t seed, std::size_t start_index);

}  // namespace tempercore
