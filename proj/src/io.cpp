#include "tempercore/io.hpp"

#include <json.hpp>
#include <sstream>

namespace tempercore {

std::string format_double(double x) {
  // nlohmann emits the shortest representation that round-trips.
  return nlohmann::json(x).dump();
}

std::string chain_to_csv(const BirthDeathChain& chain) {
  std::ostringstream os;
  os << "state,pi_m,up,down,hold\n";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    os << format_double(chain.states[i]) << ',' << format_double(chain.pi_m[i]) << ','
       << format_double(chain.up[i]) << ',' << format_double(chain.down[i]) << ','
       << format_double(chain.hold[i]) << '\n';
  }
  return os.str();
}

std::string variance_report_to_json(const VarianceReport& rep) {
  nlohmann::json j;
  j["m"] = rep.m;
  j["S"] = rep.S;
  j["v"] = rep.v;
  j["scaled"] = rep.scaled;
  return j.dump(2);
}

std::string path_to_csv(const PathSummary& path, std::size_t thin) {
  if (thin == 0) thin = 1;
  std::ostringstream os;
  os << "t,x\n";
  for (std::size_t i = 0; i < path.values.size(); i += thin) {
    os << format_double(static_cast<double>(i) * path.dt) << ','
       << format_double(path.values[i]) << '\n';
  }
  return os.str();
}

std::string trace_to_csv(const STTrace& trace, const Ladder& ladder) {
  std::ostringstream os;
  os << "step,index,beta,accepted\n";
  for (std::size_t n = 0; n < trace.indices.size(); ++n) {
    os << n << ',' << trace.indices[n] << ','
       << format_double(ladder.betas[trace.indices[n]]) << ','
       << (n == 0 ? 0 : static_cast<int>(trace.accepted[n - 1])) << '\n';
  }
  return os.str();
}

std::string ladder_to_json(const Ladder& ladder, const std::string& ell_name) {
  nlohmann::json j;
  j["d"] = ladder.d;
  j["chi"] = ladder.chi;
  j["betas"] = ladder.betas;
  j["ell_name"] = ell_name;
  return j.dump(2);
}

}  // namespace tempercore
