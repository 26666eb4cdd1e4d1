#include <sstream>

#include "hkd/density.hpp"
#include "hkd/json_io.hpp"

namespace hkd {

std::string density_sample_csv(const DensitySample& s) {
  std::ostringstream out;
  out << "m,x,value,value_decimal\n";
  for (std::size_t m = 0; m < s.values.size(); ++m) {
    Rational x(from_u64(m) / from_u64(s.q));
    out << m << ',' << to_string(x) << ',' << to_string(s.values[m]) << ',' << to_decimal(s.values[m], 20)
        << '\n';
  }
  return out.str();
}

std::string convergence_report_json(const ConvergenceReport& r) {
  nlohmann::json sup = nlohmann::json::array();
  for (const auto& [n, v] : r.sup_diffs) sup.push_back({std::to_string(n), to_string(v)});
  nlohmann::json ehk = nlohmann::json::array();
  for (const auto& [n, v] : r.ehk_riemann) ehk.push_back({std::to_string(n), to_string(v)});
  nlohmann::json out = {{"p", r.p},
                        {"final_n", r.final_n},
                        {"grid", r.grid},
                        {"sup_diffs", std::move(sup)},
                        {"ehk_riemann", std::move(ehk)},
                        {"density", piecewise_to_json(r.density)}};
  return out.dump();
}

}  // namespace hkd
