// tempercore: configuration-driven experiment runner.
//
//   tempercore <kind> --config path.json [--seed N] [--out dir] [--threads K]
//
// kinds: ladder | run-st | run-diffusion | compare-sigma | bounds | validate
// exit codes: 0 success, 1 validation failure, 2 bad configuration,
//             3 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tempercore/birth_death.hpp"
#include "tempercore/diffusion.hpp"
#include "tempercore/io.hpp"
#include "tempercore/ladder_opt.hpp"
#include "tempercore/tempering.hpp"
#include "tempercore/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tempercore;

namespace {

constexpr const char* kVersion = "tempercore 0.1.0";
constexpr const char* kNormalization =
    "v = sum of stationary autocovariances; scaled = 2 v / (m^2 S)";

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw config_error(where + ": unknown key \"" + it.key() + "\"");
  }
}

TemperedFamily family_from_config(const json& cfg) {
  reject_unknown_keys(cfg, {"name", "grid_n", "table_csv", "beta_min"}, "family");
  int grid_n = cfg.value("grid_n", 2048);
  double beta_min = cfg.value("beta_min", 0.05);
  if (cfg.contains("table_csv")) {
    std::ifstream in(cfg["table_csv"].get<std::string>());
    if (!in) throw config_error("family.table_csv: cannot open file");
    std::vector<double> xs, gs;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto comma = line.find(',');
      if (comma == std::string::npos)
        throw config_error("family.table_csv: expected two comma-separated columns");
      xs.push_back(std::stod(line.substr(0, comma)));
      gs.push_back(std::stod(line.substr(comma + 1)));
    }
    return make_table_family(xs, gs, grid_n);
  }
  std::string name = cfg.value("name", "gaussian");
  if (name == "gaussian") return make_gaussian_family(grid_n, beta_min);
  if (name == "uniform") return make_uniform_family(grid_n);
  if (name == "laplace") return make_laplace_family(grid_n, beta_min);
  throw config_error("family.name: expected gaussian | uniform | laplace");
}

TargetDensity target_from_config(const json& cfg) {
  reject_unknown_keys(cfg, {"name", "a", "b"}, "target");
  std::string name = cfg.value("name", "gaussian");
  if (name == "gaussian")
    return make_gaussian_target(cfg.value("a", -3.0), cfg.value("b", 3.0));
  if (name == "uniform") return make_uniform_target(cfg.value("a", 0.0), cfg.value("b", 1.0));
  if (name == "laplace") return make_laplace_target();
  throw config_error("target.name: expected gaussian | uniform | laplace");
}

SigmaFunction sigma_from_config(const json& cfg) {
  reject_unknown_keys(cfg, {"type", "value", "base", "amp", "freq", "phase"}, "sigma");
  std::string type = cfg.value("type", "constant");
  if (type == "constant") return make_constant_sigma(cfg.value("value", 1.0));
  if (type == "cosine") {
    double base = cfg.value("base", 1.0);
    double amp = cfg.value("amp", 0.0);
    double freq = cfg.value("freq", 1.0);
    double phase = cfg.value("phase", 0.0);
    if (!(base - std::abs(amp) > 0))
      throw config_error("sigma: cosine must stay positive (base > |amp|)");
    SigmaFunction s;
    s.sigma = [=](double x) { return base + amp * std::cos(freq * x + phase); };
    s.dsigma = [=](double x) { return -amp * freq * std::sin(freq * x + phase); };
    s.k_lo = base - std::abs(amp);
    s.k_hi = base + std::abs(amp);
    return s;
  }
  throw config_error("sigma.type: expected constant | cosine");
}

struct RuleSpec {
  Evaluator ell;
  std::string name;
};

RuleSpec rule_from_config(const json& cfg, const TemperedFamily& family) {
  reject_unknown_keys(cfg, {"type", "a", "ell"}, "rule");
  std::string type = cfg.value("type", "optimal");
  if (type == "optimal") return {optimal_rule(family).ell_rule, "optimal"};
  if (type == "acceptance") {
    double a = cfg.value("a", 0.234);
    return {ell_for_acceptance(family, a), "acceptance:" + format_double(a)};
  }
  if (type == "constant") {
    double ell = cfg.value("ell", 1.0);
    if (!(ell > 0)) throw config_error("rule.ell must be positive");
    return {[ell](double) { return ell; }, "constant:" + format_double(ell)};
  }
  throw config_error("rule.type: expected optimal | acceptance | constant");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write " + path.string());
  out << content;
}

void write_manifest(const fs::path& out_dir, const std::string& kind, const json& config,
                    std::uint64_t seed) {
  json manifest;
  manifest["version"] = kVersion;
  manifest["normalization"] = kNormalization;
  manifest["kind"] = kind;
  manifest["config"] = config;
  manifest["seed"] = seed;
  manifest["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

json result_header() {
  json j;
  j["version"] = kVersion;
  j["normalization"] = kNormalization;
  return j;
}

int run_kind(const std::string& kind, const json& cfg, std::uint64_t seed,
             const fs::path& out_dir) {
  if (kind == "ladder") {
    reject_unknown_keys(cfg, {"family", "d", "chi", "rule", "seed"}, "config");
    TemperedFamily family = family_from_config(cfg.value("family", json::object()));
    RuleSpec rule = rule_from_config(cfg.value("rule", json::object()), family);
    Ladder ladder = build_ladder(rule.ell, cfg.value("d", 100), cfg.value("chi", 0.3));
    json result = result_header();
    result["ladder"] = json::parse(ladder_to_json(ladder, rule.name));
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    return 0;
  }

  if (kind == "run-st") {
    reject_unknown_keys(cfg, {"family", "d", "chi", "rule", "n_steps", "seed"}, "config");
    TemperedFamily family = family_from_config(cfg.value("family", json::object()));
    RuleSpec rule = rule_from_config(cfg.value("rule", json::object()), family);
    Ladder ladder = build_ladder(rule.ell, cfg.value("d", 100), cfg.value("chi", 0.3));
    std::size_t n_steps = cfg.value("n_steps", 100000);
    STTrace trace = run_st_chain(family, ladder, n_steps, seed);
    int n_batches = std::clamp(static_cast<int>(trace.indices.size() / 100), 10, 30);
    TraceStats stats = trace_stats(trace, ladder, [](double b) { return b; }, n_batches);
    json result = result_header();
    result["ladder"] = json::parse(ladder_to_json(ladder, rule.name));
    result["stats"] = {{"esjd", stats.esjd},
                       {"acc_rate", stats.acc_rate},
                       {"acc_rate_feasible", stats.acc_rate_feasible},
                       {"occupancy", stats.occupancy},
                       {"var_f", stats.var_f},
                       {"se", stats.se}};
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    write_file(out_dir / "trace.csv", trace_to_csv(trace, ladder));
    return 0;
  }

  if (kind == "run-diffusion") {
    reject_unknown_keys(cfg,
                        {"mode", "target", "sigma", "family", "chi", "rule", "dt", "T",
                         "x0", "n_batches", "thin", "seed"},
                        "config");
    std::string mode = cfg.value("mode", "langevin");
    DiffusionSpec spec;
    if (mode == "langevin") {
      TargetDensity target = target_from_config(cfg.value("target", json::object()));
      SigmaFunction sigma = sigma_from_config(cfg.value("sigma", json::object()));
      spec = langevin_spec(target, sigma);
    } else if (mode == "tempering-limit") {
      TemperedFamily family = family_from_config(cfg.value("family", json::object()));
      RuleSpec rule = rule_from_config(cfg.value("rule", json::object()), family);
      double chi = cfg.value("chi", 0.3);
      spec = tempering_limit_spec(family, rule.ell, chi);
      PathSummary path = simulate_reflected(spec, cfg.value("x0", 0.5 * (spec.a + spec.b)),
                                            cfg.value("dt", 1e-4), cfg.value("T", 100.0),
                                            seed);
      BatchMeansEstimate bm = batch_means_variance(
          path.values, [](double x) { return x; }, cfg.value("n_batches", 30), path.dt);
      json result = result_header();
      result["variance"] = {{"estimate", bm.estimate}, {"se", bm.se},
                            {"dt", path.dt},           {"n_steps", path.n_steps},
                            {"seed", path.seed}};
      write_file(out_dir / "result.json", result.dump(2) + "\n");
      write_file(out_dir / "path.csv", path_to_csv(path, cfg.value("thin", 1)));
      return 0;
    } else {
      throw config_error("run-diffusion.mode: expected langevin | tempering-limit");
    }
    PathSummary path = simulate_reflected(spec, cfg.value("x0", 0.5 * (spec.a + spec.b)),
                                          cfg.value("dt", 1e-3), cfg.value("T", 100.0),
                                          seed);
    BatchMeansEstimate bm = batch_means_variance(
        path.values, [](double x) { return x; }, cfg.value("n_batches", 30), path.dt);
    json result = result_header();
    result["variance"] = {{"estimate", bm.estimate}, {"se", bm.se},
                          {"dt", path.dt},           {"n_steps", path.n_steps},
                          {"seed", path.seed}};
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    write_file(out_dir / "path.csv", path_to_csv(path, cfg.value("thin", 1)));
    return 0;
  }

  if (kind == "compare-sigma") {
    reject_unknown_keys(cfg, {"target", "sigma1", "sigma2", "m_list", "seed"}, "config");
    TargetDensity target = target_from_config(cfg.value("target", json::object()));
    SigmaFunction s1 = sigma_from_config(cfg.value("sigma1", json::object()));
    SigmaFunction s2 = sigma_from_config(cfg.value("sigma2", json::object()));
    std::vector<int> m_list = cfg.value("m_list", std::vector<int>{8, 16, 32, 64});
    const std::vector<std::pair<std::string, Evaluator>> functionals = {
        {"x", [](double x) { return x; }},
        {"x^2", [](double x) { return x * x; }},
        {"sin", [](double x) { return std::sin(x); }},
        {"pos", [](double x) { return x > 0 ? 1.0 : 0.0; }}};
    std::ostringstream csv;
    csv << "m,f,v1,v2\n";
    json rows = json::array();
    bool ordered = true;
    for (int m : m_list) {
      const double bar = std::max(s1.k_hi, s2.k_hi);
      BirthDeathChain c1 = build_chain(target, s1, m, 0.0, bar);
      BirthDeathChain c2 = build_chain(target, s2, m, 0.0, bar);
      bool dominates = peskun_dominates(c1, c2);
      for (const auto& [fname, f] : functionals) {
        double v1 = exact_asymptotic_variance(c1, f).v;
        double v2 = exact_asymptotic_variance(c2, f).v;
        if (dominates && v1 > v2 + 1e-10) ordered = false;
        csv << m << ',' << fname << ',' << format_double(v1) << ','
            << format_double(v2) << '\n';
        rows.push_back({{"m", m}, {"f", fname}, {"v1", v1}, {"v2", v2},
                        {"dominates", dominates}});
      }
    }
    json result = result_header();
    result["rows"] = rows;
    result["ordering_holds"] = ordered;
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    write_file(out_dir / "compare.csv", csv.str());
    return 0;
  }

  if (kind == "bounds") {
    reject_unknown_keys(cfg, {"target", "sigma", "m_list", "L", "seed"}, "config");
    TargetDensity target = target_from_config(cfg.value("target", json::object()));
    SigmaFunction sigma = sigma_from_config(cfg.value("sigma", json::object()));
    std::vector<int> m_list = cfg.value("m_list", std::vector<int>{8, 16, 32, 64});
    double L = cfg.value("L", target.lipschitz_L);
    RegularityReport reg = check_regularity(target, m_list);
    std::ostringstream csv;
    csv << "m,gap_exact,gap_lower_bound\n";
    json rows = json::array();
    bool sandwich = true;
    for (int m : m_list) {
      BirthDeathChain chain =
          build_chain(target, sigma, m, target.domain.is_bounded() ? 0.0 : reg.q);
      double ge = gap_exact(chain);
      double r = target.domain.is_bounded() ? 0.0 : target.domain.as_real_line().tail_rate;
      double gb = gap_lower_bound(
          L, r, reg.Q, sigma.k_lo, m,
          target.domain.is_bounded() ? DomainKind::bounded : DomainKind::real_line);
      if (ge < gb) sandwich = false;
      csv << m << ',' << format_double(ge) << ',' << format_double(gb) << '\n';
      rows.push_back({{"m", m}, {"gap_exact", ge}, {"gap_lower_bound", gb}});
    }
    json result = result_header();
    result["regularity"] = {{"L_hat", reg.L_hat}, {"tail_ok", reg.tail_ok},
                            {"q", reg.q},         {"Q", reg.Q}};
    result["rows"] = rows;
    result["bound_holds"] = sandwich;
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    write_file(out_dir / "bounds.csv", csv.str());
    return 0;
  }

  if (kind == "validate") {
    reject_unknown_keys(cfg, {"seed"}, "config");
    ValidationReport rep = run_validation(seed);
    for (const auto& c : rep.criteria) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "  ("
                << c.elapsed_s << " s)\n";
    }
    json result = result_header();
    result["report"] = json::parse(rep.to_json());
    write_file(out_dir / "result.json", result.dump(2) + "\n");
    return rep.all_pass() ? 0 : 1;
  }

  throw config_error("unknown experiment kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion-limit MCMC efficiency experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::int64_t seed_flag = -1;
  int threads = 1;

  const std::vector<std::string> kinds = {"ladder",        "run-st", "run-diffusion",
                                          "compare-sigma", "bounds", "validate"};
  for (const auto& kind : kinds) {
    auto* sub = app.add_subcommand(kind);
    sub->add_option("--config", config_path, "JSON experiment configuration");
    sub->add_option("--seed", seed_flag, "master seed (overrides config and env)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (reserved)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw config_error("cannot open config " + config_path);
      try {
        cfg = json::parse(in);
      } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
      }
    }
    std::uint64_t seed = 0;
    if (seed_flag >= 0) {
      seed = static_cast<std::uint64_t>(seed_flag);
    } else if (cfg.contains("seed")) {
      seed = cfg["seed"].get<std::uint64_t>();
    } else if (const char* env = std::getenv("TEMPERCORE_SEED")) {
      seed = std::strtoull(env, nullptr, 10);
    }
    fs::create_directories(out_dir);
    write_manifest(out_dir, kind, cfg, seed);
    return run_kind(kind, cfg, seed, out_dir);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", e.what()}};
    std::cerr << "numerical failure: " << err.dump() << "\n";
    return 3;
  }
}
