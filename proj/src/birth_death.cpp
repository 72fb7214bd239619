#include "tempercore/birth_death.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tempercore/rng.hpp"

namespace tempercore {

SigmaFunction make_constant_sigma(double c) {
  if (!(c > 0)) throw input_error("make_constant_sigma: c must be positive");
  SigmaFunction s;
  s.sigma = [c](double) { return c; };
  s.dsigma = [](double) { return 0.0; };
  s.k_lo = c;
  s.k_hi = c;
  return s;
}

void BirthDeathChain::validate() const {
  const std::size_t n = size();
  if (n < 2) throw structure_error("BirthDeathChain: need at least two states");
  if (up.size() != n || down.size() != n || hold.size() != n || pi_m.size() != n)
    throw structure_error("BirthDeathChain: inconsistent array lengths");
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i] < 0 || down[i] < 0 || hold[i] < -1e-15)
      throw structure_error("BirthDeathChain: negative transition probability");
    if (std::abs(up[i] + down[i] + hold[i] - 1.0) > 1e-12)
      throw structure_error("BirthDeathChain: row does not sum to one");
  }
  if (up[n - 1] != 0.0 || down[0] != 0.0)
    throw structure_error("BirthDeathChain: boundary transitions must vanish");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double flow_up = pi_m[i] * up[i];
    double flow_down = pi_m[i + 1] * down[i + 1];
    double scale = std::max(flow_up, flow_down);
    if (scale > 0 && std::abs(flow_up - flow_down) > 1e-12 * scale)
      throw structure_error("BirthDeathChain: detailed balance violated");
  }
}

BirthDeathChain build_chain(const TargetDensity& pi, const SigmaFunction& sigma, int m,
                            double truncation_q, double sigma_bar) {
  if (m < 2) throw input_error("build_chain: m must be at least 2");
  if (sigma_bar != 0.0 && sigma_bar < sigma.k_hi)
    throw input_error("build_chain: sigma_bar must be at least sigma.k_hi");

  long i_lo, i_hi;
  bool bounded = pi.domain.is_bounded();
  if (bounded) {
    const auto& b = pi.domain.as_bounded();
    i_lo = static_cast<long>(std::ceil(b.a * m - 1e-9));
    i_hi = static_cast<long>(std::floor(b.b * m + 1e-9));
  } else {
    if (!(truncation_q > 0))
      throw input_error("build_chain: real-line targets need truncation_q > 0");
    i_lo = -static_cast<long>(std::floor(truncation_q * m + 1e-9));
    i_hi = -i_lo;
  }
  const std::size_t n = static_cast<std::size_t>(i_hi - i_lo + 1);
  if (n < 2) throw input_error("build_chain: state space has fewer than two states");

  BirthDeathChain c;
  c.m = m;
  c.bounded_domain = bounded;
  const double k_hi = sigma_bar != 0.0 ? sigma_bar : sigma.k_hi;
  c.S = 2.0 * std::max(k_hi, k_hi * k_hi) * std::exp(pi.lipschitz_L);

  c.states.resize(n);
  std::vector<double> logp(n), s2(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.states[j] = static_cast<double>(i_lo + static_cast<long>(j)) / m;
    logp[j] = pi.log_pi(c.states[j]);
    if (!std::isfinite(logp[j]))
      throw input_error("build_chain: target density not positive at a state");
    double s = sigma.sigma(c.states[j]);
    s2[j] = s * s;
  }

  c.up.assign(n, 0.0);
  c.down.assign(n, 0.0);
  c.hold.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j + 1 < n)
      c.up[j] = (s2[j] + s2[j + 1] * std::exp(logp[j + 1] - logp[j])) / (2.0 * c.S);
    if (j > 0)
      c.down[j] = (s2[j] + s2[j - 1] * std::exp(logp[j - 1] - logp[j])) / (2.0 * c.S);
    c.hold[j] = 1.0 - c.up[j] - c.down[j];
    if (c.hold[j] < -1e-14)
      throw structure_error("build_chain: up + down exceeds one despite S selection");
    c.hold[j] = std::max(c.hold[j], 0.0);
  }

  double lpmax = *std::max_element(logp.begin(), logp.end());
  double total = 0.0;
  c.pi_m.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.pi_m[j] = std::exp(logp[j] - lpmax);
    total += c.pi_m[j];
  }
  for (double& p : c.pi_m) p /= total;

  c.validate();
  return c;
}

VarianceReport exact_asymptotic_variance(const BirthDeathChain& chain, const Evaluator& f) {
  const std::size_t n = chain.size();
  Eigen::VectorXd pi(n), fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi(i) = chain.pi_m[i];
    fv(i) = f(chain.states[i]);
    if (!std::isfinite(fv(i)))
      throw input_error("exact_asymptotic_variance: f not finite at a state");
  }
  const double mean = pi.dot(fv);
  Eigen::VectorXd fbar = fv.array() - mean;
  const double var = (pi.array() * fbar.array().square()).sum();

  // (Id - P) u = fbar, made nonsingular by projecting out the constant
  // direction: solve (Id - P + 1 pi^T) u = fbar.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = 1.0 - chain.hold[i];
    if (i + 1 < n) A(i, i + 1) = -chain.up[i];
    if (i > 0) A(i, i - 1) = -chain.down[i];
  }
  A += Eigen::VectorXd::Ones(n) * pi.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd u = lu.solve(fbar);
  const double residual = (A * u - fbar).norm();
  if (!(residual < 1e-8 * (1.0 + fbar.norm())))
    throw structure_error("exact_asymptotic_variance: singular system (reducible chain?)");

  VarianceReport rep;
  rep.v = 2.0 * (pi.array() * fbar.array() * u.array()).sum() - var;
  rep.m = chain.m;
  rep.S = chain.S;
  rep.scaled = 2.0 * rep.v / (static_cast<double>(chain.m) * chain.m * chain.S);
  return rep;
}

bool peskun_dominates(const BirthDeathChain& c1, const BirthDeathChain& c2) {
  if (c1.size() != c2.size() || c1.m != c2.m)
    throw incomparable_error("peskun_dominates: mismatched grids");
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (std::abs(c1.states[i] - c2.states[i]) > 1e-12)
      throw incomparable_error("peskun_dominates: mismatched grids");
    if (std::abs(c1.pi_m[i] - c2.pi_m[i]) > 1e-12 * std::max(c1.pi_m[i], c2.pi_m[i]))
      throw incomparable_error("peskun_dominates: mismatched stationary laws");
  }
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1.up[i] < c2.up[i] - 1e-14) return false;
    if (c1.down[i] < c2.down[i] - 1e-14) return false;
  }
  return true;
}

double gap_exact(const BirthDeathChain& chain) {
  chain.validate();  // reversibility is a precondition
  const std::size_t n = chain.size();
  // Symmetrised transition matrix: D^{1/2} P D^{-1/2} is symmetric
  // tridiagonal with off-diagonals sqrt(up[i] * down[i+1]).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = chain.hold[i];
    if (i + 1 < n) {
      double off = std::sqrt(chain.up[i] * chain.down[i + 1]);
      A(i, i + 1) = off;
      A(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("gap_exact: eigen-solver did not converge");
  const auto& ev = es.eigenvalues();  // ascending
  return 1.0 - ev(n - 2);
}

double gap_lower_bound(double L, double r, double Q, double k_lo, int m, DomainKind kind) {
  if (!(Q > 0) || !(k_lo > 0) || m < 1)
    throw input_error("gap_lower_bound: Q, k_lo, m must be positive");
  const double q_branch = Q * k_lo * std::exp(-2.0 * L / m) / (2.0 * m);
  double kappa;
  if (kind == DomainKind::real_line) {
    if (!(r > 0)) throw input_error("gap_lower_bound: r must be positive on the real line");
    kappa = std::min(k_lo * std::exp(-L) * r / (2.0 * m), q_branch);
  } else {
    kappa = q_branch;
  }
  return 0.5 * kappa * kappa;
}

namespace {

inline std::size_t step_once(const BirthDeathChain& chain, std::size_t i, double u) {
  if (u < chain.up[i]) return i + 1;
  if (u < chain.up[i] + chain.down[i]) return i - 1;
  return i;
}

}  // namespace

SpeededPath sample_speeded_path(const BirthDeathChain& chain, double T, std::uint64_t seed,
                                std::size_t start_index) {
  if (!(T > 0)) throw input_error("sample_speeded_path: T must be positive");
  if (start_index >= chain.size())
    throw input_error("sample_speeded_path: start_index out of range");
  const double rate = 0.5 * static_cast<double>(chain.m) * chain.m * chain.S;
  const std::size_t n_steps = static_cast<std::size_t>(std::floor(rate * T));
  SpeededPath p;
  p.T = T;
  p.m = chain.m;
  p.S = chain.S;
  p.start_index = start_index;
  p.indices.resize(n_steps);
  Rng rng(seed);
  std::size_t i = start_index;
  for (std::size_t k = 0; k < n_steps; ++k) {
    i = step_once(chain, i, rng.uniform());
    p.indices[k] = static_cast<std::uint32_t>(i);
  }
  return p;
}

double SpeededPath::state_at(const BirthDeathChain& chain, double t) const {
  const double rate = 0.5 * static_cast<double>(m) * m * S;
  long k = static_cast<long>(std::floor(rate * std::min(t, T)));
  if (k <= 0) return chain.states[start_index];
  std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(k), indices.size());
  return chain.states[indices[idx - 1]];
}

std::size_t run_chain_steps(const BirthDeathChain& chain, std::size_t n_steps,
                            std::uint64_t seed, std::size_t start_index) {
  Rng rng(seed);
  std::size_t i = start_index;
  for (std::size_t k = 0; k < n_steps; ++k) i = step_once(chain, i, rng.uniform());
  return i;
}

}  // namespace tempercore
