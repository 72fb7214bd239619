#pragma once

#include <cstdint>
#include <vector>

#include "tempercore/domain.hpp"
#include "tempercore/tempered_family.hpp"

namespace tempercore {

/// Inverse-temperature grid generated by the recursion
/// beta_{i+1} = beta_i - ell(beta_i)/sqrt(d), stopped before dropping
/// below chi. betas.front() == 1.
struct Ladder {
  std::vector<double> betas;
  double chi = 0.0;
  int d = 1;

  int k_d() const { return static_cast<int>(betas.size()) - 1; }
};

Ladder build_ladder(const Evaluator& ell, int d, double chi);

/// Index path of the simulated tempering temperature chain, with proposal
/// and acceptance counts. Boundary proposals (outside the ladder) are
/// auto-rejected but still count as proposals; feasible_proposals counts
/// only proposals to an existing rung.
struct STTrace {
  std::vector<std::int32_t> indices;
  std::vector<std::uint8_t> accepted;  // per step; auto-rejections are 0
  std::size_t proposals = 0;
  std::size_t feasible_proposals = 0;
  std::size_t accepts = 0;
  std::uint64_t seed = 0;
};

struct STOptions {
  /// Replace the exact sum of g over the d within-temperature draws by its
  /// normal approximation N(d M, d I). Default off: exact sampling is the
  /// ground truth.
  bool gaussian_fast_path = false;
  std::int32_t start_index = 0;
};

/// Run the temperature chain under instant within-temperature remixing:
/// before every proposal the d coordinates are redrawn i.i.d. from f^beta
/// and only G = sum g(X_j) is retained; a move beta -> beta' is accepted
/// with probability min(1, exp(d (K(beta') - K(beta)) + (beta' - beta) G)).
STTrace run_st_chain(const TemperedFamily& family, const Ladder& ladder,
                     std::size_t n_steps, std::uint64_t seed, STOptions opts = {});

/// First-order acceptance probability 2 Phi(-ell sqrt(I(beta)) / 2).
double acceptance_asymptotic(const TemperedFamily& family, double beta, double ell_val);

/// Expected swap acceptance over feasible proposals in stationarity, at the
/// ladder's finite d: averages E[min(1, e^X)] across all feasible moves with
/// X = d (K(b') - K(b)) + (b' - b) G and G approximated by N(d M(b), d I(b)).
/// Converges to the first-order value as d grows; at moderate d it carries
/// the full K''' bias that the refined expansions only approximate.
double expected_acceptance(const TemperedFamily& family, const Ladder& ladder);

struct RefinedAcceptance {
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
};

/// Two-term acceptance expansion with the K''' correction at finite d.
/// ell_prime is the derivative of the ell rule at beta (0 for a constant
/// rule); it only enters the downward probability through
/// l_under = ell + ell ell'/sqrt(d).
RefinedAcceptance acceptance_refined(const TemperedFamily& family, double beta,
                                     double ell_val, int d, double ell_prime = 0.0);

struct TraceStats {
  double esjd = 0.0;       // mean squared jump of beta per step
  double acc_rate = 0.0;   // accepts / all proposals (auto-rejections included)
  double acc_rate_feasible = 0.0;  // accepts / proposals to an existing rung
  std::vector<double> occupancy;   // normalised index histogram
  double var_f = 0.0;      // batch-means asymptotic variance of f(beta_n)
  double se = 0.0;
};

TraceStats trace_stats(const STTrace& trace, const Ladder& ladder, const Evaluator& f,
                       int n_batches = 30);

}  // namespace tempercore
