#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "tempercore/errors.hpp"

namespace tempercore {

using Evaluator = std::function<double(double)>;

/// State space of a target: a bounded interval with reflecting boundaries,
/// or the whole real line with exponentially bounded tails.
class Domain {
public:
  struct Bounded {
    double a, b;
  };
  struct RealLine {
    double tail_rate;       // r: decay rate of the density beyond the threshold
    double tail_threshold;  // K: |x| beyond which the exponential bound holds
  };

  static Domain bounded(double a, double b) {
    if (!(a < b)) throw input_error("Domain::bounded requires a < b");
    return Domain(Bounded{a, b});
  }
  static Domain real_line(double tail_rate, double tail_threshold) {
    if (!(tail_rate > 0) || !(tail_threshold > 0))
      throw input_error("Domain::real_line requires tail_rate > 0 and tail_threshold > 0");
    return Domain(RealLine{tail_rate, tail_threshold});
  }

  bool is_bounded() const { return std::holds_alternative<Bounded>(v_); }
  const Bounded& as_bounded() const { return std::get<Bounded>(v_); }
  const RealLine& as_real_line() const { return std::get<RealLine>(v_); }

private:
  explicit Domain(Bounded b) : v_(b) {}
  explicit Domain(RealLine r) : v_(r) {}
  std::variant<Bounded, RealLine> v_;
};

/// One-dimensional target density, known through its (possibly unnormalised)
/// log density and derivative, with a declared log-Lipschitz constant.
struct TargetDensity {
  Evaluator log_pi;
  Evaluator dlog_pi;
  double lipschitz_L = 0.0;
  Domain domain = Domain::bounded(0.0, 1.0);
};

/// Empirical regularity summary of a target: observed log-Lipschitz constant,
/// whether the tail-mass condition could be certified, and the (q, Q) pair
/// entering the capacitance bound.
struct RegularityReport {
  double L_hat = 0.0;
  bool tail_ok = false;
  double q = 0.0;
  double Q = 0.0;  // min of the normalised density on [-q-1, q+1] (or [a, b])
};

/// Scan the target on grids i/m for each m in m_list: estimate the Lipschitz
/// constant, certify the tail-mass condition by doubling q from the tail
/// threshold, and evaluate Q on the resulting compact set.
RegularityReport check_regularity(const TargetDensity& pi, const std::vector<int>& m_list);

/// Normalising constant of exp(log_pi) over the domain (bounded) or over the
/// truncation interval [-x_max, x_max] implied by the tail bound (real line).
double normalizing_constant(const TargetDensity& pi);

// Named targets used by tests and the CLI.
TargetDensity make_gaussian_target(double a, double b);       // N(0,1) restricted to [a,b]
TargetDensity make_uniform_target(double a, double b);        // flat on [a,b]
TargetDensity make_laplace_target(double tail_rate = 1.0, double tail_threshold = 1.0);

}  // namespace tempercore
