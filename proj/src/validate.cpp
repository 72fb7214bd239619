#include "tempercore/validate.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "tempercore/birth_death.hpp"
#include "tempercore/diffusion.hpp"
#include "tempercore/io.hpp"
#include "tempercore/ladder_opt.hpp"
#include "tempercore/math.hpp"
#include "tempercore/rng.hpp"
#include "tempercore/tempering.hpp"

namespace tempercore {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SigmaPair {
  SigmaFunction s1, s2;  // s1 >= s2 pointwise
};

// Smooth volatility pair with sigma2 in [0.3, 0.5] and sigma1 = sigma2 + delta,
// delta >= 0.05, both bounded inside [0.3, 1].
SigmaPair draw_sigma_pair(std::uint64_t seed) {
  Rng rng(seed);
  const double c2 = 0.35 + 0.10 * rng.uniform();
  const double a2 = 0.05 * rng.uniform();
  const double w2 = 0.5 + 1.5 * rng.uniform();
  const double p2 = 2.0 * M_PI * rng.uniform();
  const double cd = 0.10 + 0.15 * rng.uniform();
  const double ad = 0.5 * cd * rng.uniform();
  const double wd = 0.5 + 1.5 * rng.uniform();
  const double pd = 2.0 * M_PI * rng.uniform();

  SigmaPair pair;
  pair.s2.sigma = [=](double x) { return c2 + a2 * std::cos(w2 * x + p2); };
  pair.s2.dsigma = [=](double x) { return -a2 * w2 * std::sin(w2 * x + p2); };
  pair.s2.k_lo = c2 - a2;
  pair.s2.k_hi = c2 + a2;
  pair.s1.sigma = [=](double x) {
    return c2 + a2 * std::cos(w2 * x + p2) + cd + ad * std::cos(wd * x + pd);
  };
  pair.s1.dsigma = [=](double x) {
    return -a2 * w2 * std::sin(w2 * x + p2) - ad * wd * std::sin(wd * x + pd);
  };
  pair.s1.k_lo = c2 - a2 + cd - ad;
  pair.s1.k_hi = c2 + a2 + cd + ad;
  return pair;
}

std::string fd(double x) { return format_double(x); }

// Effective-sample-size-corrected chi-square uniformity test on ladder
// occupancy. The raw counts are autocorrelated; the statistic is computed at
// the effective sample size implied by the batch-means variance of beta.
double occupancy_uniformity_pvalue(const STTrace& trace, const Ladder& ladder) {
  TraceStats stats = trace_stats(trace, ladder, [](double b) { return b; }, 50);
  // Marginal variance of beta along the trace.
  double mean = 0.0, var = 0.0;
  std::vector<double> betas(trace.indices.size());
  for (std::size_t i = 0; i < betas.size(); ++i) betas[i] = ladder.betas[trace.indices[i]];
  for (double b : betas) mean += b;
  mean /= static_cast<double>(betas.size());
  for (double b : betas) var += (b - mean) * (b - mean);
  var /= static_cast<double>(betas.size());
  const double tau_factor = std::max(stats.var_f / std::max(var, 1e-300), 1.0);
  const double n_eff = static_cast<double>(betas.size()) / tau_factor;
  const int k = ladder.k_d() + 1;
  const double expected = 1.0 / static_cast<double>(k);
  double stat = 0.0;
  for (double o : stats.occupancy) stat += (o - expected) * (o - expected) / expected;
  stat *= n_eff;
  return chi_square_sf(stat, k - 1);
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["normalization"] = "v = sum of stationary autocovariances; scaled = 2 v / (m^2 S)";
  j["criteria"] = nlohmann::json::array();
  for (const auto& c : criteria)
    j["criteria"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["all_pass"] = all_pass();
  return j.dump(2);
}

ValidationReport run_validation(std::uint64_t master_seed) {
  ValidationReport report;
  report.seed = master_seed;

  const TargetDensity target = make_gaussian_target(-3.0, 3.0);
  const std::vector<int> m_list = {8, 16, 32, 64};
  const double declared_L = 3.0;
  const RegularityReport reg = check_regularity(target, m_list);

  // 1. Optimal acceptance rate and stationarity certificate.
  {
    auto t0 = Clock::now();
    OptimalU opt = optimal_u();
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "optimal-acceptance-rate";
    c.pass = opt.acc_star >= 0.2335 && opt.acc_star <= 0.2345 &&
             opt.stationarity_residual < 1e-8 && elapsed < 1.0;
    c.detail = "u_star=" + fd(opt.u_star) + " acc_star=" + fd(opt.acc_star) +
               " residual=" + fd(opt.stationarity_residual);
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // Battery of random volatility pairs shared by the ordering and gap checks.
  const int n_pairs = 20;
  struct BatteryEntry {
    SigmaPair pair;
    std::vector<BirthDeathChain> chains1, chains2;  // indexed like m_list
  };
  std::vector<BatteryEntry> battery(n_pairs);
  for (int p = 0; p < n_pairs; ++p) {
    battery[p].pair = draw_sigma_pair(split_seed(master_seed, 100 + p));
    // Common normaliser: both chains of a pair share a clock so their
    // transition probabilities are directly comparable.
    const double bar = std::max(battery[p].pair.s1.k_hi, battery[p].pair.s2.k_hi);
    for (int m : m_list) {
      battery[p].chains1.push_back(build_chain(target, battery[p].pair.s1, m, 0.0, bar));
      battery[p].chains2.push_back(build_chain(target, battery[p].pair.s2, m, 0.0, bar));
    }
  }

  // 2. Exact Peskun ordering of asymptotic variances.
  {
    auto t0 = Clock::now();
    const std::vector<std::pair<std::string, Evaluator>> functionals = {
        {"x", [](double x) { return x; }},
        {"x^2", [](double x) { return x * x; }},
        {"sin", [](double x) { return std::sin(x); }},
        {"pos", [](double x) { return x > 0 ? 1.0 : 0.0; }}};
    bool pass = true;
    double worst_violation = -HUGE_VAL;
    for (auto& entry : battery) {
      for (std::size_t im = 0; im < m_list.size(); ++im) {
        if (!peskun_dominates(entry.chains1[im], entry.chains2[im])) pass = false;
        for (const auto& [fname, f] : functionals) {
          double v1 = exact_asymptotic_variance(entry.chains1[im], f).v;
          double v2 = exact_asymptotic_variance(entry.chains2[im], f).v;
          worst_violation = std::max(worst_violation, v1 - v2);
          if (!(v1 <= v2 + 1e-10)) pass = false;
        }
      }
    }
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "peskun-exact-ordering";
    c.pass = pass && elapsed < 120.0;
    c.detail = "pairs=" + std::to_string(n_pairs) +
               " worst(v1-v2)=" + fd(worst_violation);
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // 3. Scaled-variance convergence and agreement with the diffusion estimate.
  {
    auto t0 = Clock::now();
    SigmaFunction unit = make_constant_sigma(1.0);
    Evaluator f = [](double x) { return x; };
    // Successive grid refinements by a factor of 4: first-order convergence in
    // m then contracts the differences by ~4, well inside the 0.5 threshold.
    double s16 = 0, s64 = 0, s256 = 0;
    {
      BirthDeathChain ch16 = build_chain(target, unit, 16);
      BirthDeathChain ch64 = build_chain(target, unit, 64);
      BirthDeathChain ch256 = build_chain(target, unit, 256);
      s16 = exact_asymptotic_variance(ch16, f).scaled;
      s64 = exact_asymptotic_variance(ch64, f).scaled;
      s256 = exact_asymptotic_variance(ch256, f).scaled;
    }
    DiffusionSpec spec = langevin_spec(target, unit);
    PathSummary path =
        simulate_reflected(spec, 0.0, 1e-3, 2e3, split_seed(master_seed, 3));
    BatchMeansEstimate bm = batch_means_variance(path.values, f, 30, path.dt);
    const bool cauchy = std::abs(s256 - s64) < 0.5 * std::abs(s64 - s16);
    const bool agrees = std::abs(s256 - bm.estimate) <= 3.0 * bm.se;
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "variance-scaling-convergence";
    c.pass = cauchy && agrees && elapsed < 300.0;
    c.detail = "scaled16=" + fd(s16) + " scaled64=" + fd(s64) + " scaled256=" + fd(s256) +
               " diffusion=" + fd(bm.estimate) + " se=" + fd(bm.se);
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // 4. Capacitance gap bound and m^2-scaling band.
  {
    auto t0 = Clock::now();
    bool pass = true;
    double worst_margin = HUGE_VAL;
    double band_worst = 1.0;
    for (auto& entry : battery) {
      for (int side = 0; side < 2; ++side) {
        const auto& chains = side == 0 ? entry.chains1 : entry.chains2;
        const double k_lo = side == 0 ? entry.pair.s1.k_lo : entry.pair.s2.k_lo;
        double scaled_min = HUGE_VAL, scaled_max = -HUGE_VAL;
        for (std::size_t im = 0; im < m_list.size(); ++im) {
          double ge = gap_exact(chains[im]);
          double gb = gap_lower_bound(declared_L, 0.0 /*unused*/, reg.Q, k_lo,
                                      m_list[im], DomainKind::bounded);
          worst_margin = std::min(worst_margin, ge - gb);
          if (!(ge >= gb)) pass = false;
          double scaled = ge * m_list[im] * m_list[im];
          scaled_min = std::min(scaled_min, scaled);
          scaled_max = std::max(scaled_max, scaled);
        }
        band_worst = std::max(band_worst, scaled_max / scaled_min);
        if (scaled_max > 4.0 * scaled_min) pass = false;
      }
    }
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "spectral-gap-bound";
    c.pass = pass;
    c.detail = "worst(gap-bound)=" + fd(worst_margin) +
               " worst m^2-band ratio=" + fd(band_worst);
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // Shared tempering setup.
  TemperedFamily gaussian = make_gaussian_family();
  const double chi = 0.3;
  OptimalRule rule = optimal_rule(gaussian);

  // 5. Empirical swap acceptance at the speed-optimal ladder. The exact chain
  // at moderate d sits a full O(d^{-1/2}) K'''-bias below the limiting 0.234
  // (about 0.087 at d=100 for this family), so the moderate-d runs are checked
  // against the exact finite-d expectation, and the limiting value itself is
  // reproduced directly at d=6400 where the bias fits inside the band.
  STTrace trace_d100, trace_d400;
  Ladder ladder_d100 = build_ladder(rule.ell_rule, 100, chi);
  Ladder ladder_d400 = build_ladder(rule.ell_rule, 400, chi);
  {
    auto t0 = Clock::now();
    trace_d100 = run_st_chain(gaussian, ladder_d100, 100000, split_seed(master_seed, 5));
    trace_d400 = run_st_chain(gaussian, ladder_d400, 100000, split_seed(master_seed, 6));
    Ladder ladder_d6400 = build_ladder(rule.ell_rule, 6400, chi);
    STTrace trace_d6400 =
        run_st_chain(gaussian, ladder_d6400, 50000, split_seed(master_seed, 7));
    auto feasible_rate = [](const STTrace& t) {
      return static_cast<double>(t.accepts) / static_cast<double>(t.feasible_proposals);
    };
    double acc100 = feasible_rate(trace_d100);
    double acc400 = feasible_rate(trace_d400);
    double acc6400 = feasible_rate(trace_d6400);
    double pred100 = expected_acceptance(gaussian, ladder_d100);
    double pred400 = expected_acceptance(gaussian, ladder_d400);
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "tempering-acceptance-rate";
    c.pass = std::abs(acc100 - pred100) <= 0.02 && std::abs(acc400 - pred400) <= 0.012 &&
             std::abs(acc6400 - 0.234) <= 0.02 && elapsed < 180.0;
    c.detail = "acc_d100=" + fd(acc100) + " (pred " + fd(pred100) + ") acc_d400=" +
               fd(acc400) + " (pred " + fd(pred400) + ") acc_d6400=" + fd(acc6400) +
               " (limit 0.234)";
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // 6. ESJD sweep over target acceptance rates. At d=100 the finite-d bias
  // (strongest exactly for the small-a / large-step ladders) pushes the peak
  // far to the right of 0.234, so the sweep runs at d=10^4 where the sweep
  // resolves the limiting peak; the flagged normal fast path for G keeps the
  // per-step cost independent of d.
  {
    auto t0 = Clock::now();
    STOptions fast;
    fast.gaussian_fast_path = true;
    std::vector<double> targets, esjds;
    double best_a = 0.0, best_esjd = -1.0;
    for (int ia = 1; ia <= 10; ++ia) {
      double a = 0.05 * ia;
      Ladder ladder = build_ladder(ell_for_acceptance(gaussian, a), 10000, chi);
      STTrace trace =
          run_st_chain(gaussian, ladder, 500000, split_seed(master_seed, 60 + ia), fast);
      TraceStats stats = trace_stats(trace, ladder, [](double b) { return b; });
      targets.push_back(a);
      esjds.push_back(stats.esjd);
      if (stats.esjd > best_esjd) {
        best_esjd = stats.esjd;
        best_a = a;
      }
    }
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "esjd-peak-location";
    c.pass = best_a >= 0.19 && best_a <= 0.28 && elapsed < 600.0;
    std::ostringstream os;
    os << "argmax_a=" << fd(best_a) << " esjd=[";
    for (std::size_t i = 0; i < esjds.size(); ++i)
      os << (i ? "," : "") << fd(esjds[i]);
    os << "]";
    c.detail = os.str();
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // 7. Asymptotic-variance minimisation at the optimal ladder. Same finite-d
  // consideration as criterion 6: at d=100 the bias erodes the optimal
  // ladder's edge over a=0.5 to a few percent, below statistical resolution,
  // so the comparison runs at d=1600 (edge about 33%) with the fast path.
  {
    auto t0 = Clock::now();
    const int n_reps = 10;
    const int var_d = 1600;
    const std::size_t n_steps = 500000;
    const int n_batches = 250;
    STOptions fast;
    fast.gaussian_fast_path = true;
    auto run_ladder = [&](const Ladder& ladder, int block) {
      std::vector<double> estimates(n_reps);
      for (int r = 0; r < n_reps; ++r) {
        STTrace trace = run_st_chain(gaussian, ladder, n_steps,
                                     split_seed(master_seed, 700 + 50 * block + r), fast);
        TraceStats stats =
            trace_stats(trace, ladder, [](double b) { return b; }, n_batches);
        estimates[r] = stats.var_f;
      }
      double mean = 0.0;
      for (double e : estimates) mean += e;
      mean /= n_reps;
      double sd = 0.0;
      for (double e : estimates) sd += (e - mean) * (e - mean);
      sd = std::sqrt(sd / (n_reps - 1));
      return std::pair<double, double>{mean, sd / std::sqrt(n_reps)};
    };
    Ladder ladder_opt = build_ladder(rule.ell_rule, var_d, chi);
    Ladder ladder_01 = build_ladder(ell_for_acceptance(gaussian, 0.1), var_d, chi);
    Ladder ladder_05 = build_ladder(ell_for_acceptance(gaussian, 0.5), var_d, chi);
    auto [v_opt, se_opt] = run_ladder(ladder_opt, 0);
    auto [v_01, se_01] = run_ladder(ladder_01, 1);
    auto [v_05, se_05] = run_ladder(ladder_05, 2);
    const bool beats_01 = v_opt <= v_01 - 3.0 * std::sqrt(se_opt * se_opt + se_01 * se_01);
    const bool beats_05 = v_opt <= v_05 - 3.0 * std::sqrt(se_opt * se_opt + se_05 * se_05);
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "variance-minimisation";
    c.pass = beats_01 && beats_05 && elapsed < 900.0;
    c.detail = "v_opt=" + fd(v_opt) + "(se " + fd(se_opt) + ") v_a0.1=" + fd(v_01) +
               "(se " + fd(se_01) + ") v_a0.5=" + fd(v_05) + "(se " + fd(se_05) + ")";
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  // 8. Uniform occupancy across temperatures.
  {
    auto t0 = Clock::now();
    double p100 = occupancy_uniformity_pvalue(trace_d100, ladder_d100);
    double p400 = occupancy_uniformity_pvalue(trace_d400, ladder_d400);
    CriterionResult c;
    c.name = "uniform-occupancy";
    c.pass = p100 > 0.01 && p400 > 0.01;
    c.detail = "p_d100=" + fd(p100) + " p_d400=" + fd(p400);
    c.elapsed_s = seconds_since(t0);
    report.criteria.push_back(c);
  }

  // 9. Weak convergence of time-1 marginals to the reflected Langevin law.
  {
    auto t0 = Clock::now();
    const int n_reps = 10000;
    SigmaFunction unit = make_constant_sigma(1.0);
    DiffusionSpec spec = langevin_spec(target, unit);
    std::vector<double> diffusion_finals(n_reps);
    for (int r = 0; r < n_reps; ++r) {
      PathSummary p =
          simulate_reflected(spec, 0.0, 1e-3, 1.0, split_seed(master_seed, 90000 + r));
      diffusion_finals[r] = p.values.back();
    }
    std::vector<double> ks(m_list.size());
    for (std::size_t im = 0; im < m_list.size(); ++im) {
      BirthDeathChain chain = build_chain(target, unit, m_list[im]);
      const std::size_t start = chain.size() / 2;  // the state at zero
      const double rate = 0.5 * static_cast<double>(chain.m) * chain.m * chain.S;
      const std::size_t n_steps = static_cast<std::size_t>(std::floor(rate));
      std::vector<double> finals(n_reps);
      for (int r = 0; r < n_reps; ++r) {
        std::size_t idx = run_chain_steps(chain, n_steps,
                                          split_seed(master_seed, 91000 + 10000 * im + r),
                                          start);
        finals[r] = chain.states[idx];
      }
      ks[im] = ks_distance_two_sample(finals, diffusion_finals);
    }
    bool pass = true;
    for (std::size_t im = 1; im < ks.size(); ++im)
      if (!(ks[im] <= 1.10 * ks[im - 1])) pass = false;
    double elapsed = seconds_since(t0);
    CriterionResult c;
    c.name = "weak-convergence-marginals";
    c.pass = pass && elapsed < 600.0;
    std::ostringstream os;
    os << "ks=[";
    for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << fd(ks[i]);
    os << "]";
    c.detail = os.str();
    c.elapsed_s = elapsed;
    report.criteria.push_back(c);
  }

  return report;
}

}  // namespace tempercore
