#pragma once

#include <string>

#include "tempercore/birth_death.hpp"
#include "tempercore/diffusion.hpp"
#include "tempercore/tempering.hpp"

namespace tempercore {

/// Shortest-round-trip formatting; CSV output is byte-stable across runs.
std::string format_double(double x);

std::string chain_to_csv(const BirthDeathChain& chain);
std::string variance_report_to_json(const VarianceReport& rep);
std::string path_to_csv(const PathSummary& path, std::size_t thin = 1);
std::string trace_to_csv(const STTrace& trace, const Ladder& ladder);
std::string ladder_to_json(const Ladder& ladder, const std::string& ell_name);

}  // namespace tempercore
