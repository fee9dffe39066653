#include "nanogrid/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nanogrid/error.hpp"

namespace nanogrid {

namespace {

// Power equivalent of a few ulps of the bus frequency. omega - omega_o cannot
// be resolved more finely than this, so a droop response that close to a
// saturation limit is taken to be at the limit.
double droop_resolution_w(double omega_nominal, double slope) noexcept {
    const double ulp =
        std::nextafter(omega_nominal, std::numeric_limits<double>::infinity()) - omega_nominal;
    return 4.0 * ulp / slope;
}

}  // namespace

double pv_power(double omega, double p_avail, const NanogridParams& p) noexcept {
    const double dev = omega - p.omega_nominal;
    if (!(dev > 0.0)) return p_avail;
    const double curtail = dev / p.m_pv;
    if (curtail >= p_avail - droop_resolution_w(p.omega_nominal, p.m_pv)) return 0.0;
    return std::clamp(p_avail - curtail, 0.0, p_avail);
}

double aux_power(double omega, const NanogridParams& p) noexcept {
    const double dev = p.omega_nominal - omega;
    if (!(dev > 0.0)) return 0.0;
    const double out = dev / p.m_aux;
    if (out >= p.aux_rating_w - droop_resolution_w(p.omega_nominal, p.m_aux))
        return p.aux_rating_w;
    return out;
}

BusState grid_step(double omega_cmd, double p_avail, double p_load, const NanogridParams& p) {
    if (!(p_avail >= 0.0) || !(p_load >= 0.0))
        throw ValidationError("grid_step: available PV and load power must be >= 0");
    BusState s;
    s.omega = omega_cmd;
    s.p_pv_avail = p_avail;
    s.p_load = p_load;
    s.p_pv = pv_power(omega_cmd, p_avail, p);
    s.p_aux = aux_power(omega_cmd, p);
    s.p_bat = s.p_pv + s.p_aux - s.p_load;
    if (std::abs(s.p_bat) > 4.0 * p.charge_max_w)
        throw SlackOverload("battery slack power " + std::to_string(s.p_bat) +
                            " W exceeds 4x the charging limit");
    return s;
}

double battery_soc_update_unclamped(const BatteryState& state, double dt_s,
                                    const NanogridParams& p) noexcept {
    return state.soc_pct + 100.0 * state.p_bat_w * (dt_s / 3600.0) / p.battery_energy_wh();
}

double battery_soc_update(const BatteryState& state, double dt_s, const NanogridParams& p) {
    if (!(dt_s > 0.0)) throw ValidationError("battery_soc_update: dt must be > 0");
    return std::clamp(battery_soc_update_unclamped(state, dt_s, p), 0.0, 100.0);
}

}  // namespace nanogrid
