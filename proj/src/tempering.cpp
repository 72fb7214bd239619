#include "tempercore/tempering.hpp"

#include <cmath>

#include "tempercore/diffusion.hpp"
#include "tempercore/math.hpp"
#include "tempercore/rng.hpp"

namespace tempercore {

Ladder build_ladder(const Evaluator& ell, int d, double chi) {
  if (d < 1) throw input_error("build_ladder: d must be positive");
  if (!(chi > 0 && chi < 1)) throw input_error("build_ladder: chi must lie in (0, 1)");
  Ladder ladder;
  ladder.chi = chi;
  ladder.d = d;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  double beta = 1.0;
  ladder.betas.push_back(beta);
  for (std::size_t i = 0; i < 1000000; ++i) {
    double step = ell(beta);
    if (!(step > 0)) throw config_error("build_ladder: ell must be positive on [chi, 1]");
    double next = beta - step / sqrt_d;
    if (next < chi) return ladder;
    beta = next;
    ladder.betas.push_back(beta);
  }
  throw config_error("build_ladder: recursion did not terminate within 1e6 rungs");
}

STTrace run_st_chain(const TemperedFamily& family, const Ladder& ladder,
                     std::size_t n_steps, std::uint64_t seed, STOptions opts) {
  if (n_steps < 1) throw input_error("run_st_chain: n_steps must be at least 1");
  const int k = ladder.k_d();
  if (opts.start_index < 0 || opts.start_index > k)
    throw input_error("run_st_chain: start_index outside the ladder");

  // Per-rung constants and samplers, fixed up front.
  std::vector<double> K(k + 1), M(k + 1), I(k + 1);
  std::vector<TemperedFamily::Sampler> samplers;
  samplers.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    Moments mo = family.moments(ladder.betas[i]);
    K[i] = mo.K;
    M[i] = mo.M;
    I[i] = mo.I;
    if (!opts.gaussian_fast_path) samplers.push_back(family.sampler(ladder.betas[i]));
  }

  STTrace trace;
  trace.seed = seed;
  trace.indices.reserve(n_steps + 1);
  trace.accepted.reserve(n_steps);
  Rng rng(seed);
  const double d = static_cast<double>(ladder.d);
  std::int32_t i = opts.start_index;
  trace.indices.push_back(i);

  for (std::size_t step = 0; step < n_steps; ++step) {
    // Instant remixing: the d coordinates are redrawn from f^beta before
    // every proposal; only G = sum of g over the coordinates is kept.
    double G;
    if (opts.gaussian_fast_path) {
      G = d * M[i] + std::sqrt(d * I[i]) * rng.normal();
    } else {
      G = 0.0;
      for (int j = 0; j < ladder.d; ++j) G += family.log_f(samplers[i].draw(rng));
    }
    const bool go_down = rng.uniform() < 0.5;  // towards smaller beta
    const std::int32_t prop = go_down ? i + 1 : i - 1;
    ++trace.proposals;
    bool accept = false;
    if (prop >= 0 && prop <= k) {
      ++trace.feasible_proposals;
      const double log_ratio =
          d * (K[prop] - K[i]) + (ladder.betas[prop] - ladder.betas[i]) * G;
      accept = log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio;
    }
    if (accept) {
      i = prop;
      ++trace.accepts;
    }
    trace.indices.push_back(i);
    trace.accepted.push_back(accept ? 1 : 0);
  }
  return trace;
}

double acceptance_asymptotic(const TemperedFamily& family, double beta, double ell_val) {
  if (!(ell_val >= 0)) throw input_error("acceptance_asymptotic: ell_val must be >= 0");
  const double I = std::max(family.moments(beta).I, 0.0);
  double a = 2.0 * normal_cdf(-0.5 * ell_val * std::sqrt(I));
  return std::min(a, 1.0);
}

double expected_acceptance(const TemperedFamily& family, const Ladder& ladder) {
  const int k = ladder.k_d();
  if (k < 1) return 0.0;
  const double d = static_cast<double>(ladder.d);
  // log Phi(z), stable for very negative z.
  auto log_phi = [](double z) {
    if (z > -8.0) return std::log(normal_cdf(z));
    return -0.5 * z * z - std::log(-z) - 0.5 * kLogTwoPi;
  };
  // E[min(1, e^X)] for X ~ N(mu, sig^2): Phi(mu/sig) + e^{mu+sig^2/2} Phi(-sig-mu/sig).
  auto move_acceptance = [&](double from, double to) {
    Moments mo = family.moments(from);
    Moments mt = family.moments(to);
    const double mu = d * (mt.K - mo.K) + (to - from) * d * mo.M;
    const double sig = std::abs(to - from) * std::sqrt(std::max(d * mo.I, 0.0));
    if (sig < 1e-12) return std::min(1.0, std::exp(std::min(mu, 0.0)));
    return normal_cdf(mu / sig) +
           std::exp(mu + 0.5 * sig * sig + log_phi(-sig - mu / sig));
  };
  // Stationary occupancy is uniform over the rungs and feasible proposals are
  // equally likely, so the feasible-move acceptance averages uniformly.
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    total += move_acceptance(ladder.betas[i], ladder.betas[i + 1]);
  for (int i = 1; i <= k; ++i)
    total += move_acceptance(ladder.betas[i], ladder.betas[i - 1]);
  return total / (2.0 * k);
}

RefinedAcceptance acceptance_refined(const TemperedFamily& family, double beta,
                                     double ell_val, int d, double ell_prime) {
  if (d < 1) throw input_error("acceptance_refined: d must be positive");
  const double I = family.moments(beta).I;
  if (I < 1e-12) {
    // Degenerate family: the log acceptance ratio is deterministic and -> 0.
    return {1.0, 1.0};
  }
  const double kppp = family.third_derivative_k(beta);
  const double sq = std::sqrt(I);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  auto clamp01 = [](double x) { return std::min(std::max(x, 0.0), 1.0); };

  RefinedAcceptance out;
  {
    const double l = ell_val;
    const double eps = l / sqrt_d;
    const double shift = eps * l * kppp / (6.0 * sq);
    out.alpha_plus = clamp01(normal_cdf(-0.5 * sq * l - shift) +
                             std::exp(-eps * l * l * kppp / 6.0) *
                                 normal_cdf(-0.5 * sq * l + shift));
  }
  {
    const double l = ell_val + ell_val * ell_prime / sqrt_d;
    const double eps = l / sqrt_d;
    const double shift = eps * l * kppp / (6.0 * sq);
    out.alpha_minus = clamp01(normal_cdf(-0.5 * sq * l + shift) +
                              std::exp(eps * l * l * kppp / 6.0) *
                                  normal_cdf(-0.5 * sq * l - shift));
  }
  return out;
}

TraceStats trace_stats(const STTrace& trace, const Ladder& ladder, const Evaluator& f,
                       int n_batches) {
  if (trace.indices.size() < 1000)
    throw insufficient_data_error("trace_stats: trace shorter than 1000 steps");
  TraceStats stats;
  const int k = ladder.k_d();
  stats.occupancy.assign(k + 1, 0.0);
  std::vector<double> fvals(trace.indices.size());
  double esjd = 0.0;
  for (std::size_t n = 0; n < trace.indices.size(); ++n) {
    const double beta = ladder.betas[trace.indices[n]];
    fvals[n] = f(beta);
    stats.occupancy[trace.indices[n]] += 1.0;
    if (n > 0) {
      const double jump = beta - ladder.betas[trace.indices[n - 1]];
      esjd += jump * jump;
    }
  }
  esjd /= static_cast<double>(trace.indices.size() - 1);
  stats.esjd = esjd;
  for (double& o : stats.occupancy) o /= static_cast<double>(trace.indices.size());
  stats.acc_rate = trace.proposals
                       ? static_cast<double>(trace.accepts) / trace.proposals
                       : 0.0;
  stats.acc_rate_feasible =
      trace.feasible_proposals
          ? static_cast<double>(trace.accepts) / trace.feasible_proposals
          : 0.0;
  BatchMeansEstimate bm =
      batch_means_variance(fvals, [](double x) { return x; }, n_batches, 1.0);
  stats.var_f = bm.estimate;
  stats.se = bm.se;
  return stats;
}

}  // namespace tempercore
