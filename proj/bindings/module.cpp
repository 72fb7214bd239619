#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tempercore/birth_death.hpp"
#include "tempercore/diffusion.hpp"
#include "tempercore/io.hpp"
#include "tempercore/ladder_opt.hpp"
#include "tempercore/tempering.hpp"
#include "tempercore/validate.hpp"

namespace py = pybind11;
using namespace tempercore;

PYBIND11_MODULE(_tempercore, m) {
  m.doc() = "Diffusion-limit MCMC efficiency toolkit";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<structure_error>(m, "StructureError", PyExc_RuntimeError);
  py::register_exception<incomparable_error>(m, "IncomparableError", PyExc_ValueError);
  py::register_exception<insufficient_data_error>(m, "InsufficientDataError",
                                                  PyExc_ValueError);
  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

  py::class_<Domain>(m, "Domain")
      .def_static("bounded", &Domain::bounded, py::arg("a"), py::arg("b"))
      .def_static("real_line", &Domain::real_line, py::arg("tail_rate"),
                  py::arg("tail_threshold"))
      .def_property_readonly("is_bounded", &Domain::is_bounded);

  py::class_<TargetDensity>(m, "TargetDensity")
      .def(py::init([](Evaluator log_pi, Evaluator dlog_pi, double L, Domain domain) {
             return TargetDensity{std::move(log_pi), std::move(dlog_pi), L, domain};
           }),
           py::arg("log_pi"), py::arg("dlog_pi"), py::arg("lipschitz_L"),
           py::arg("domain"))
      .def_readonly("lipschitz_L", &TargetDensity::lipschitz_L);
  m.def("make_gaussian_target", &make_gaussian_target, py::arg("a"), py::arg("b"));
  m.def("make_uniform_target", &make_uniform_target, py::arg("a"), py::arg("b"));
  m.def("make_laplace_target", &make_laplace_target, py::arg("tail_rate") = 1.0,
        py::arg("tail_threshold") = 1.0);

  py::class_<RegularityReport>(m, "RegularityReport")
      .def_readonly("L_hat", &RegularityReport::L_hat)
      .def_readonly("tail_ok", &RegularityReport::tail_ok)
      .def_readonly("q", &RegularityReport::q)
      .def_readonly("Q", &RegularityReport::Q);
  m.def("check_regularity", &check_regularity, py::arg("pi"), py::arg("m_list"));

  py::class_<Moments>(m, "Moments")
      .def_readonly("M", &Moments::M)
      .def_readonly("I", &Moments::I)
      .def_readonly("K", &Moments::K);

  py::class_<TemperedFamily>(m, "TemperedFamily")
      .def(py::init<Evaluator, Domain, int, double>(), py::arg("log_f"),
           py::arg("support"), py::arg("grid_n"), py::arg("beta_min") = 0.05)
      .def("moments", &TemperedFamily::moments, py::arg("beta"))
      .def("third_derivative_k", &TemperedFamily::third_derivative_k, py::arg("beta"))
      .def("sample", &TemperedFamily::sample, py::arg("beta"), py::arg("n"),
           py::arg("seed"));
  m.def("make_gaussian_family", &make_gaussian_family, py::arg("grid_n") = 2048,
        py::arg("beta_min") = 0.05);
  m.def("make_uniform_family", &make_uniform_family, py::arg("grid_n") = 2048);
  m.def("make_laplace_family", &make_laplace_family, py::arg("grid_n") = 2048,
        py::arg("beta_min") = 0.05);
  m.def("make_table_family", &make_table_family, py::arg("x"), py::arg("log_f"),
        py::arg("grid_n") = 2048);

  py::class_<SigmaFunction>(m, "SigmaFunction")
      .def(py::init([](Evaluator sigma, Evaluator dsigma, double k_lo, double k_hi) {
             return SigmaFunction{std::move(sigma), std::move(dsigma), k_lo, k_hi};
           }),
           py::arg("sigma"), py::arg("dsigma"), py::arg("k_lo"), py::arg("k_hi"))
      .def_readonly("k_lo", &SigmaFunction::k_lo)
      .def_readonly("k_hi", &SigmaFunction::k_hi);
  m.def("make_constant_sigma", &make_constant_sigma, py::arg("c"));

  py::class_<BirthDeathChain>(m, "BirthDeathChain")
      .def_readonly("m", &BirthDeathChain::m)
      .def_readonly("S", &BirthDeathChain::S)
      .def_readonly("states", &BirthDeathChain::states)
      .def_readonly("up", &BirthDeathChain::up)
      .def_readonly("down", &BirthDeathChain::down)
      .def_readonly("hold", &BirthDeathChain::hold)
      .def_readonly("pi_m", &BirthDeathChain::pi_m)
      .def("validate", &BirthDeathChain::validate)
      .def("to_csv", [](const BirthDeathChain& c) { return chain_to_csv(c); });
  m.def("build_chain", &build_chain, py::arg("pi"), py::arg("sigma"), py::arg("m"),
        py::arg("truncation_q") = 0.0, py::arg("sigma_bar") = 0.0);

  py::class_<VarianceReport>(m, "VarianceReport")
      .def_readonly("v", &VarianceReport::v)
      .def_readonly("scaled", &VarianceReport::scaled)
      .def_readonly("m", &VarianceReport::m)
      .def_readonly("S", &VarianceReport::S);
  m.def("exact_asymptotic_variance", &exact_asymptotic_variance, py::arg("chain"),
        py::arg("f"));
  m.def("peskun_dominates", &peskun_dominates, py::arg("c1"), py::arg("c2"));
  m.def("gap_exact", &gap_exact, py::arg("chain"));
  py::enum_<DomainKind>(m, "DomainKind")
      .value("bounded", DomainKind::bounded)
      .value("real_line", DomainKind::real_line);
  m.def("gap_lower_bound", &gap_lower_bound, py::arg("L"), py::arg("r"), py::arg("Q"),
        py::arg("k_lo"), py::arg("m"), py::arg("kind"));

  py::class_<DiffusionSpec>(m, "DiffusionSpec")
      .def_readonly("a", &DiffusionSpec::a)
      .def_readonly("b", &DiffusionSpec::b)
      .def("drift", [](const DiffusionSpec& s, double x) { return s.drift(x); })
      .def("vol2", [](const DiffusionSpec& s, double x) { return s.vol2(x); });
  m.def("langevin_spec", &langevin_spec, py::arg("pi"), py::arg("sigma"));
  m.def("tempering_limit_spec", &tempering_limit_spec, py::arg("family"), py::arg("ell"),
        py::arg("chi"));

  py::class_<PathSummary>(m, "PathSummary")
      .def_readonly("dt", &PathSummary::dt)
      .def_readonly("n_steps", &PathSummary::n_steps)
      .def_readonly("seed", &PathSummary::seed)
      .def_readonly("values", &PathSummary::values);
  m.def("simulate_reflected", &simulate_reflected, py::arg("spec"), py::arg("x0"),
        py::arg("dt"), py::arg("T"), py::arg("seed"));

  py::class_<BatchMeansEstimate>(m, "BatchMeansEstimate")
      .def_readonly("estimate", &BatchMeansEstimate::estimate)
      .def_readonly("se", &BatchMeansEstimate::se);
  m.def("batch_means_variance", &batch_means_variance, py::arg("values"), py::arg("f"),
        py::arg("n_batches"), py::arg("dt"));

  py::class_<Ladder>(m, "Ladder")
      .def_readonly("betas", &Ladder::betas)
      .def_readonly("chi", &Ladder::chi)
      .def_readonly("d", &Ladder::d)
      .def_property_readonly("k_d", &Ladder::k_d);
  m.def("build_ladder", &build_ladder, py::arg("ell"), py::arg("d"), py::arg("chi"));

  py::class_<STTrace>(m, "STTrace")
      .def_readonly("indices", &STTrace::indices)
      .def_readonly("proposals", &STTrace::proposals)
      .def_readonly("feasible_proposals", &STTrace::feasible_proposals)
      .def_readonly("accepts", &STTrace::accepts)
      .def_readonly("seed", &STTrace::seed);
  py::class_<STOptions>(m, "STOptions")
      .def(py::init<>())
      .def_readwrite("gaussian_fast_path", &STOptions::gaussian_fast_path)
      .def_readwrite("start_index", &STOptions::start_index);
  m.def("run_st_chain", &run_st_chain, py::arg("family"), py::arg("ladder"),
        py::arg("n_steps"), py::arg("seed"), py::arg("opts") = STOptions{});
  m.def("acceptance_asymptotic", &acceptance_asymptotic, py::arg("family"),
        py::arg("beta"), py::arg("ell_val"));
  py::class_<RefinedAcceptance>(m, "RefinedAcceptance")
      .def_readonly("alpha_plus", &RefinedAcceptance::alpha_plus)
      .def_readonly("alpha_minus", &RefinedAcceptance::alpha_minus);
  m.def("acceptance_refined", &acceptance_refined, py::arg("family"), py::arg("beta"),
        py::arg("ell_val"), py::arg("d"), py::arg("ell_prime") = 0.0);

  py::class_<TraceStats>(m, "TraceStats")
      .def_readonly("esjd", &TraceStats::esjd)
      .def_readonly("acc_rate", &TraceStats::acc_rate)
      .def_readonly("acc_rate_feasible", &TraceStats::acc_rate_feasible)
      .def_readonly("occupancy", &TraceStats::occupancy)
      .def_readonly("var_f", &TraceStats::var_f)
      .def_readonly("se", &TraceStats::se);
  m.def("trace_stats", &trace_stats, py::arg("trace"), py::arg("ladder"), py::arg("f"),
        py::arg("n_batches") = 30);

  py::class_<OptimalU>(m, "OptimalU")
      .def_readonly("u_star", &OptimalU::u_star)
      .def_readonly("acc_star", &OptimalU::acc_star)
      .def_readonly("stationarity_residual", &OptimalU::stationarity_residual);
  m.def("optimal_u", &optimal_u);
  py::class_<OptimalRule>(m, "OptimalRule")
      .def_readonly("u_star", &OptimalRule::u_star)
      .def_readonly("acc_star", &OptimalRule::acc_star)
      .def("ell", [](const OptimalRule& r, double beta) { return r.ell_rule(beta); });
  m.def("optimal_rule", &optimal_rule, py::arg("family"));
  m.def("speed", &speed, py::arg("family"), py::arg("beta"), py::arg("ell_val"));
  m.def("ell_for_acceptance", &ell_for_acceptance, py::arg("family"), py::arg("a"));
  m.def("optimal_ladder", &optimal_ladder, py::arg("family"), py::arg("d"),
        py::arg("chi"));

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("passed", &CriterionResult::pass)
      .def_readonly("detail", &CriterionResult::detail)
      .def_readonly("elapsed_s", &CriterionResult::elapsed_s);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("seed", &ValidationReport::seed)
      .def_readonly("criteria", &ValidationReport::criteria)
      .def("all_pass", &ValidationReport::all_pass)
      .def("to_json", &ValidationReport::to_json);
  m.def("run_validation", &run_validation, py::arg("master_seed"),
        py::call_guard<py::gil_scoped_release>());
}
