#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "tempercore/domain.hpp"

namespace tempercore {

/// The three scalar functionals of a tempered family at inverse temperature
/// beta: M = mean of g under f^beta, I = variance of g under f^beta, and
/// K = -log of the normalising constant of f^beta.
struct Moments {
  double M = 0.0;
  double I = 0.0;
  double K = 0.0;
};

/// A family of flattened densities f^beta built from an unnormalised base
/// density f through g = log f. Quadrature nodes are fixed at construction;
/// moment evaluations refine internally until converged and are cached per
/// beta. Immutable after construction; the caches tolerate concurrent
/// readers with single-writer insertion.
class TemperedFamily {
public:
  /// beta_min bounds the temperatures the family will be asked about; for
  /// real-line supports it sets the truncation interval so that the omitted
  /// tail mass is negligible at every beta >= beta_min.
  TemperedFamily(Evaluator log_f, Domain support, int grid_n, double beta_min = 0.05);

  double log_f(double x) const { return log_f_(x); }
  const Domain& support() const { return support_; }
  double beta_min() const { return beta_min_; }
  int grid_n() const { return grid_n_; }
  double grid_lo() const { return lo_; }
  double grid_hi() const { return hi_; }

  /// (M, I, K) at beta in (0, 1], by converged quadrature. Cached.
  Moments moments(double beta) const;

  /// K'''(beta) = -I'(beta), by centred differencing of I.
  double third_derivative_k(double beta) const;

  /// n i.i.d. draws from the normalised f^beta, by inverse-CDF lookup on the
  /// quadrature grid with linear interpolation. Deterministic given seed.
  std::vector<double> sample(double beta, std::size_t n, std::uint64_t seed) const;

  struct CdfTable {
    std::vector<double> cdf;  // normalised, cdf.front() = 0, cdf.back() = 1
  };

  /// Reusable per-beta sampler handle (hot path for the tempering chain).
  class Sampler {
  public:
    double draw(class Rng& rng) const;

  private:
    friend class TemperedFamily;
    std::shared_ptr<const std::vector<double>> nodes_;
    std::shared_ptr<const CdfTable> table_;
  };
  Sampler sampler(double beta) const;

private:
  // Caches live behind a shared_ptr so families are cheap to copy (the copies
  // share one cache, which is what immutability makes safe anyway).
  struct Caches {
    std::shared_mutex mutex;
    std::map<double, Moments> moments;
    std::map<double, std::shared_ptr<const CdfTable>> cdfs;
  };

  Moments compute_moments(double beta) const;
  std::shared_ptr<const CdfTable> cdf_table(double beta) const;

  Evaluator log_f_;
  Domain support_;
  int grid_n_;
  double beta_min_;
  double lo_, hi_;
  std::shared_ptr<const std::vector<double>> nodes_;
  std::vector<double> g_;  // log f at the nodes

  std::shared_ptr<Caches> caches_;
};

// Named families matching the CLI density names.
TemperedFamily make_gaussian_family(int grid_n = 2048, double beta_min = 0.05);
TemperedFamily make_uniform_family(int grid_n = 2048);
TemperedFamily make_laplace_family(int grid_n = 2048, double beta_min = 0.05);

/// Family from a table of (x, log f(x)) pairs with strictly increasing x,
/// linearly interpolated, supported on [x.front(), x.back()].
TemperedFamily make_table_family(const std::vector<double>& x,
                                 const std::vector<double>& log_f, int grid_n = 2048);

}  // namespace tempercore
