#include "tempercore/tempered_family.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tempercore/math.hpp"
#include "tempercore/rng.hpp"

namespace tempercore {

namespace {

// Truncation point for a real-line support: the exponential tail bound at the
// flattest requested temperature must contribute less than ~1e-13 relative mass.
double find_truncation(const Evaluator& log_f, const Domain::RealLine& rl,
                       double beta_min) {
  const double g0 = log_f(0.0);
  double x = std::max(rl.tail_threshold, 1.0);
  for (int iter = 0; iter < 40; ++iter) {
    double worst = std::max(log_f(x), log_f(-x));
    double tail = std::exp(beta_min * (worst - g0)) / (beta_min * rl.tail_rate);
    if (tail < 1e-13) return x;
    x *= 2.0;
  }
  throw numerical_error("TemperedFamily: could not truncate the tails");
}

}  // namespace

TemperedFamily::TemperedFamily(Evaluator log_f, Domain support, int grid_n,
                               double beta_min)
    : log_f_(std::move(log_f)), support_(support), grid_n_(grid_n), beta_min_(beta_min) {
  if (grid_n_ < 64) throw input_error("TemperedFamily: grid_n must be at least 64");
  if (grid_n_ % 2 != 0) ++grid_n_;
  if (!(beta_min_ > 0.0 && beta_min_ <= 1.0))
    throw input_error("TemperedFamily: beta_min must lie in (0, 1]");

  if (support_.is_bounded()) {
    lo_ = support_.as_bounded().a;
    hi_ = support_.as_bounded().b;
  } else {
    double w = find_truncation(log_f_, support_.as_real_line(), beta_min_);
    lo_ = -w;
    hi_ = w;
  }

  auto nodes = std::make_shared<std::vector<double>>(grid_n_ + 1);
  g_.resize(grid_n_ + 1);
  for (int i = 0; i <= grid_n_; ++i) {
    (*nodes)[i] = lo_ + (hi_ - lo_) * static_cast<double>(i) / grid_n_;
    g_[i] = log_f_((*nodes)[i]);
    if (!std::isfinite(g_[i]))
      throw input_error("TemperedFamily: log_f is not finite at a quadrature node");
  }
  nodes_ = std::move(nodes);
  caches_ = std::make_shared<Caches>();
}

Moments TemperedFamily::compute_moments(double beta) const {
  // Simpson on the base grid, refined by node doubling until three functionals
  // agree to 1e-8 relative.
  const double rel_tol = 1e-8;
  const int max_n = 1 << 21;
  Moments prev{}, cur{};
  bool have_prev = false;
  for (int n = grid_n_; n <= max_n; n *= 2) {
    std::vector<double> g(n + 1);
    double gmax = -HUGE_VAL;
    for (int i = 0; i <= n; ++i) {
      double x = lo_ + (hi_ - lo_) * static_cast<double>(i) / n;
      g[i] = log_f_(x);
      gmax = std::max(gmax, g[i]);
    }
    std::vector<double> w(n + 1), wg(n + 1), wgg(n + 1);
    for (int i = 0; i <= n; ++i) {
      w[i] = std::exp(beta * (g[i] - gmax));
      wg[i] = w[i] * g[i];
    }
    const double z = simpson(w, lo_, hi_);
    const double m = simpson(wg, lo_, hi_) / z;
    for (int i = 0; i <= n; ++i) wgg[i] = w[i] * (g[i] - m) * (g[i] - m);
    cur.M = m;
    cur.I = simpson(wgg, lo_, hi_) / z;
    cur.K = -(beta * gmax + std::log(z));
    if (have_prev) {
      auto close = [&](double a, double b) {
        return std::abs(a - b) <= rel_tol * (1.0 + std::max(std::abs(a), std::abs(b)));
      };
      if (close(cur.M, prev.M) && close(cur.I, prev.I) && close(cur.K, prev.K)) return cur;
    }
    prev = cur;
    have_prev = true;
  }
  throw numerical_error("TemperedFamily::moments: quadrature did not converge", cur.K,
                        prev.K);
}

Moments TemperedFamily::moments(double beta) const {
  if (!(beta > 0.0) || beta > 1.5)
    throw input_error("TemperedFamily::moments: beta out of range");
  {
    std::shared_lock lock(caches_->mutex);
    auto it = caches_->moments.find(beta);
    if (it != caches_->moments.end()) return it->second;
  }
  Moments m = compute_moments(beta);
  std::unique_lock lock(caches_->mutex);
  caches_->moments.emplace(beta, m);
  return m;
}

double TemperedFamily::third_derivative_k(double beta) const {
  const double h = 1e-3 * std::max(1.0, beta);
  if (!(beta - h > 0.0))
    throw input_error("TemperedFamily::third_derivative_k: beta too close to 0");
  // K'' = -I, so K''' = -I'.
  double ip = moments(beta + h).I;
  double im = moments(beta - h).I;
  return -(ip - im) / (2.0 * h);
}

std::shared_ptr<const TemperedFamily::CdfTable> TemperedFamily::cdf_table(
    double beta) const {
  {
    std::shared_lock lock(caches_->mutex);
    auto it = caches_->cdfs.find(beta);
    if (it != caches_->cdfs.end()) return it->second;
  }
  auto table = std::make_shared<CdfTable>();
  const std::size_t n = nodes_->size();
  double gmax = *std::max_element(g_.begin(), g_.end());
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(beta * (g_[i] - gmax));
  table->cdf.resize(n);
  table->cdf[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    table->cdf[i] = table->cdf[i - 1] + 0.5 * (w[i - 1] + w[i]);
  const double total = table->cdf.back();
  for (double& c : table->cdf) c /= total;
  std::unique_lock lock(caches_->mutex);
  auto [it, inserted] = caches_->cdfs.emplace(beta, table);
  return it->second;
}

TemperedFamily::Sampler TemperedFamily::sampler(double beta) const {
  if (!(beta > beta_min_ - 1e-12) || beta > 1.0 + 1e-12)
    throw input_error("TemperedFamily::sampler: beta out of (beta_min, 1]");
  Sampler s;
  s.nodes_ = nodes_;
  s.table_ = cdf_table(beta);
  return s;
}

double TemperedFamily::Sampler::draw(Rng& rng) const {
  const auto& cdf = table_->cdf;
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t j = std::min<std::size_t>(std::distance(cdf.begin(), it), cdf.size() - 1);
  if (j == 0) j = 1;
  const double c0 = cdf[j - 1], c1 = cdf[j];
  const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
  return (*nodes_)[j - 1] + frac * ((*nodes_)[j] - (*nodes_)[j - 1]);
}

std::vector<double> TemperedFamily::sample(double beta, std::size_t n,
                                           std::uint64_t seed) const {
  Sampler s = sampler(beta);
  Rng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.draw(rng);
  return out;
}

TemperedFamily make_gaussian_family(int grid_n, double beta_min) {
  return TemperedFamily([](double x) { return -0.5 * x * x; },
                        Domain::real_line(1.0, 2.0), grid_n, beta_min);
}

TemperedFamily make_uniform_family(int grid_n) {
  return TemperedFamily([](double) { return 0.0; }, Domain::bounded(0.0, 1.0), grid_n);
}

TemperedFamily make_laplace_family(int grid_n, double beta_min) {
  return TemperedFamily([](double x) { return -std::abs(x); },
                        Domain::real_line(1.0, 1.0), grid_n, beta_min);
}

TemperedFamily make_table_family(const std::vector<double>& x,
                                 const std::vector<double>& log_f, int grid_n) {
  if (x.size() != log_f.size() || x.size() < 2)
    throw input_error("make_table_family: need matching x / log_f columns, length >= 2");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw input_error("make_table_family: x values must be strictly increasing");
  auto xs = std::make_shared<std::vector<double>>(x);
  auto gs = std::make_shared<std::vector<double>>(log_f);
  Evaluator eval = [xs, gs](double t) {
    if (t <= xs->front()) return gs->front();
    if (t >= xs->back()) return gs->back();
    auto it = std::upper_bound(xs->begin(), xs->end(), t);
    std::size_t j = std::distance(xs->begin(), it);
    double frac = (t - (*xs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
    return (*gs)[j - 1] + frac * ((*gs)[j] - (*gs)[j - 1]);
  };
  return TemperedFamily(std::move(eval), Domain::bounded(x.front(), x.back()), grid_n);
}

}  // namespace tempercore
