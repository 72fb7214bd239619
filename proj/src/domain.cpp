#include "tempercore/domain.hpp"

#include <algorithm>
#include <cmath>

#include "tempercore/math.hpp"

namespace tempercore {

namespace {

// Interval on which a real-line target is effectively supported: beyond it
// the exponential tail bound leaves mass below ~1e-26.
double effective_half_width(const Domain::RealLine& rl) {
  return rl.tail_threshold + 60.0 / rl.tail_rate;
}

std::pair<double, double> probe_interval(const TargetDensity& pi) {
  if (pi.domain.is_bounded()) {
    const auto& b = pi.domain.as_bounded();
    return {b.a, b.b};
  }
  const double w = effective_half_width(pi.domain.as_real_line());
  return {-w, w};
}

}  // namespace

double normalizing_constant(const TargetDensity& pi) {
  auto [lo, hi] = probe_interval(pi);
  const int n = 1 << 15;
  std::vector<double> vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / n;
    vals[i] = std::exp(pi.log_pi(x));
  }
  return simpson(vals, lo, hi);
}

RegularityReport check_regularity(const TargetDensity& pi, const std::vector<int>& m_list) {
  if (m_list.empty()) throw input_error("check_regularity: m_list must be nonempty");

  RegularityReport report;
  auto [lo, hi] = probe_interval(pi);

  // Empirical Lipschitz constant of log pi on a fine grid. A lower estimate:
  // a guaranteed constant must be declared by the caller.
  {
    const int n = 1 << 13;
    const double h = (hi - lo) / n;
    double prev = pi.log_pi(lo);
    double lmax = 0.0;
    for (int i = 1; i <= n; ++i) {
      double cur = pi.log_pi(lo + i * h);
      lmax = std::max(lmax, std::abs(cur - prev) / h);
      prev = cur;
    }
    report.L_hat = lmax;
  }

  if (pi.domain.is_bounded()) {
    const auto& b = pi.domain.as_bounded();
    report.tail_ok = true;
    report.q = std::max(std::abs(b.a), std::abs(b.b));
  } else {
    const auto& rl = pi.domain.as_real_line();
    const double q_max = std::max(rl.tail_threshold, 1.0) * 1024.0;
    double q = rl.tail_threshold;
    bool ok = false;
    while (q <= q_max) {
      ok = true;
      for (int m : m_list) {
        double total = 0.0, tail = 0.0;
        const long imax = static_cast<long>(std::ceil(hi * m));
        for (long i = -imax; i <= imax; ++i) {
          double w = std::exp(pi.log_pi(static_cast<double>(i) / m));
          total += w;
          if (std::abs(static_cast<double>(i) / m) >= q) tail += w;
        }
        if (!(tail <= 0.25 * total)) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      q *= 2.0;
    }
    if (!ok)
      throw numerical_error("check_regularity: tail-mass condition never satisfied up to q_max");
    report.tail_ok = true;
    report.q = q;
  }

  // Q: minimum of the normalised density on the compact probe set.
  {
    const double z = normalizing_constant(pi);
    double slo, shi;
    if (pi.domain.is_bounded()) {
      slo = pi.domain.as_bounded().a;
      shi = pi.domain.as_bounded().b;
    } else {
      slo = -report.q - 1.0;
      shi = report.q + 1.0;
    }
    const int n = 1 << 13;
    double qmin = HUGE_VAL;
    for (int i = 0; i <= n; ++i) {
      double x = slo + (shi - slo) * static_cast<double>(i) / n;
      qmin = std::min(qmin, std::exp(pi.log_pi(x)) / z);
    }
    report.Q = qmin;
  }
  return report;
}

TargetDensity make_gaussian_target(double a, double b) {
  TargetDensity t;
  t.log_pi = [](double x) { return -0.5 * x * x; };
  t.dlog_pi = [](double x) { return -x; };
  t.lipschitz_L = std::max(std::abs(a), std::abs(b));
  t.domain = Domain::bounded(a, b);
  return t;
}

TargetDensity make_uniform_target(double a, double b) {
  TargetDensity t;
  t.log_pi = [](double) { return 0.0; };
  t.dlog_pi = [](double) { return 0.0; };
  t.lipschitz_L = 0.0;
  t.domain = Domain::bounded(a, b);
  return t;
}

TargetDensity make_laplace_target(double tail_rate, double tail_threshold) {
  TargetDensity t;
  t.log_pi = [](double x) { return -std::abs(x); };
  t.dlog_pi = [](double x) { return x > 0 ? -1.0 : (x < 0 ? 1.0 : 0.0); };
  t.lipschitz_L = 1.0;
  t.domain = Domain::real_line(tail_rate, tail_threshold);
  return t;
}

}  // namespace tempercore
