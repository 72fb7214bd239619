#include "tempercore/diffusion.hpp"

#include <cmath>

#include "tempercore/math.hpp"
#include "tempercore/rng.hpp"

namespace tempercore {

DiffusionSpec langevin_spec(const TargetDensity& pi, const SigmaFunction& sigma) {
  if (!pi.domain.is_bounded())
    throw input_error("langevin_spec: truncate real-line targets to a bounded interval first");
  const auto& b = pi.domain.as_bounded();
  DiffusionSpec spec;
  spec.a = b.a;
  spec.b = b.b;
  Evaluator dlog = pi.dlog_pi;
  Evaluator sig = sigma.sigma;
  Evaluator dsig = sigma.dsigma;
  spec.drift = [dlog, sig, dsig](double x) {
    double s = sig(x);
    return 0.5 * s * s * dlog(x) + s * dsig(x);
  };
  spec.vol2 = [sig](double x) {
    double s = sig(x);
    return s * s;
  };
  return spec;
}

DiffusionSpec tempering_limit_spec(const TemperedFamily& family, const Evaluator& ell,
                                   double chi) {
  if (!(chi > 0 && chi < 1)) throw input_error("tempering_limit_spec: chi must be in (0,1)");
  const double h = 1e-4 * (1.0 - chi);
  const TemperedFamily* fam = &family;
  auto half_u = [fam, ell](double b) {
    // l(b) sqrt(I(b)) / 2, the argument scale of the acceptance law
    return 0.5 * ell(b) * std::sqrt(std::max(fam->moments(b).I, 0.0));
  };
  DiffusionSpec spec;
  spec.a = chi;
  spec.b = 1.0;
  spec.vol2 = [fam, ell, half_u](double b) {
    double l = ell(b);
    return 2.0 * l * l * normal_cdf(-half_u(b));
  };
  spec.drift = [fam, ell, half_u, h, chi](double b) {
    double bl = std::max(b - h, chi);
    double br = std::min(b + h, 1.0);
    double l = ell(b);
    double dl = (ell(br) - ell(bl)) / (br - bl);
    double du = (half_u(br) - half_u(bl)) / (br - bl);
    double u = half_u(b);
    return l * dl * normal_cdf(-u) - l * l * du * normal_pdf(-u);
  };
  return spec;
}

PathSummary simulate_reflected(const DiffusionSpec& spec, double x0, double dt, double T,
                               std::uint64_t seed) {
  if (!(dt > 0) || !(T >= dt)) throw input_error("simulate_reflected: need 0 < dt <= T");
  if (x0 < spec.a || x0 > spec.b)
    throw input_error("simulate_reflected: x0 outside the domain");
  const double width = spec.b - spec.a;
  const std::size_t n = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
  PathSummary path;
  path.dt = dt;
  path.n_steps = n;
  path.seed = seed;
  path.values.resize(n + 1);
  path.values[0] = x0;
  Rng rng(seed);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    double mu = spec.drift(x);
    if (std::abs(mu) * dt > width)
      throw input_error("simulate_reflected: dt too large for the drift scale");
    double v2 = spec.vol2(x);
    x += mu * dt + std::sqrt(std::max(v2, 0.0) * dt) * rng.normal();
    // Fold overshoots back into [a, b].
    while (x < spec.a || x > spec.b) {
      if (x < spec.a) x = 2.0 * spec.a - x;
      if (x > spec.b) x = 2.0 * spec.b - x;
    }
    path.values[k + 1] = x;
  }
  return path;
}

BatchMeansEstimate batch_means_variance(const std::vector<double>& values,
                                        const Evaluator& f, int n_batches, double dt) {
  if (n_batches < 10)
    throw insufficient_data_error("batch_means_variance: need at least 10 batches");
  const std::size_t batch_len = values.size() / static_cast<std::size_t>(n_batches);
  if (batch_len < 100)
    throw insufficient_data_error("batch_means_variance: batches shorter than 100 samples");
  std::vector<double> means(n_batches, 0.0);
  for (int b = 0; b < n_batches; ++b) {
    double s = 0.0;
    const std::size_t off = static_cast<std::size_t>(b) * batch_len;
    for (std::size_t i = 0; i < batch_len; ++i) s += f(values[off + i]);
    means[b] = s / static_cast<double>(batch_len);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= n_batches;
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= (n_batches - 1);
  BatchMeansEstimate est;
  est.estimate = dt * static_cast<double>(batch_len) * var;
  est.se = est.estimate * std::sqrt(2.0 / (n_batches - 1));
  return est;
}

}  // namespace tempercore
