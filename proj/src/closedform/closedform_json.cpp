#include "hkd/closedform.hpp"
#include "hkd/json_io.hpp"

namespace hkd {

std::string hk_density_json(const HKDensity& density) {
  nlohmann::json out = piecewise_to_json(density.density);
  out["ehk"] = to_string(density.ehk);
  out["provenance"] = provenance_name(density.provenance);
  return out.dump();
}

}  // namespace hkd
