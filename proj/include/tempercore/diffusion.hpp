#pragma once

#include <cstdint>
#include <vector>

#include "tempercore/birth_death.hpp"
#include "tempercore/domain.hpp"
#include "tempercore/tempered_family.hpp"

namespace tempercore {

/// Drift and squared volatility of a one-dimensional diffusion on [a, b]
/// with reflecting boundaries.
struct DiffusionSpec {
  Evaluator drift;
  Evaluator vol2;
  double a = 0.0;
  double b = 1.0;
};

/// Langevin diffusion with stationary density pi:
///   drift = sigma^2 log_pi' / 2 + sigma sigma', vol2 = sigma^2.
/// Real-line targets must be truncated to a bounded interval first.
DiffusionSpec langevin_spec(const TargetDensity& pi, const SigmaFunction& sigma);

/// Limiting diffusion of the inverse-temperature process on [chi, 1]:
///   vol2(b) = 2 l(b)^2 Phi(-l(b) sqrt(I(b)) / 2),
///   drift(b) = l l' Phi(-l sqrt(I)/2) - l^2 (l sqrt(I)/2)' phi(-l sqrt(I)/2),
/// with derivatives by centred differences.
DiffusionSpec tempering_limit_spec(const TemperedFamily& family, const Evaluator& ell,
                                   double chi);

struct PathSummary {
  double dt = 0.0;
  std::size_t n_steps = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // x_0 .. x_n, all inside [a, b]
};

/// Euler-Maruyama with reflection by folding at the boundaries.
PathSummary simulate_reflected(const DiffusionSpec& spec, double x0, double dt, double T,
                              std::uint64_t seed);

struct BatchMeansEstimate {
  double estimate = 0.0;
  double se = 0.0;
};

/// Batch-means estimate of the asymptotic variance of f along an equally
/// spaced path: dt * batch_length * var(batch means of f).
BatchMeansEstimate batch_means_variance(const std::vector<double>& values,
                                        const Evaluator& f, int n_batches, double dt);

}  // namespace tempercore
