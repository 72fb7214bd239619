#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tempercore {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;    // deterministic given the master seed
  double elapsed_s = 0;  // wall time; reported separately, never serialized
};

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;

  bool all_pass() const;
  /// Deterministic serialization: identical seed gives identical bytes.
  std::string to_json() const;
};

/// Run the quantitative validation battery (optimal acceptance rate, exact
/// Peskun orderings, variance scaling, gap bounds, tempering acceptance,
/// ESJD sweep, variance minimisation, occupancy, weak-convergence marginals).
ValidationReport run_validation(std::uint64_t master_seed);

}  // namespace tempercore
