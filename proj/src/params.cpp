#include "nanogrid/params.hpp"

#include <cmath>
#include <string>

#include "nanogrid/error.hpp"

namespace nanogrid {

namespace {

void require_positive(double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0))
        throw ValidationError(std::string("params.") + field + " must be finite and > 0");
}

}  // namespace

void NanogridParams::validate() const {
    require_positive(pv_rating_w, "pv_rating_w");
    require_positive(aux_rating_w, "aux_rating_w");
    require_positive(battery_capacity_ah, "battery_capacity_ah");
    require_positive(battery_voltage_v, "battery_voltage_v");
    require_positive(charge_max_w, "charge_max_w");
    require_positive(discharge_max_w, "discharge_max_w");
    require_positive(omega_nominal, "omega_nominal");
    require_positive(m_pv, "m_pv");
    require_positive(m_aux, "m_aux");
    require_positive(n_reactive, "n_reactive");
    if (!(std::isfinite(soc_min_pct) && std::isfinite(soc_max_pct) && 0.0 <= soc_min_pct &&
          soc_min_pct < soc_min_plus10_pct && soc_min_plus10_pct < soc_max_pct &&
          soc_max_pct <= 100.0))
        throw ValidationError(
            "params: need 0 <= soc_min_pct < soc_min_plus10_pct < soc_max_pct <= 100");
}

}  // namespace nanogrid
