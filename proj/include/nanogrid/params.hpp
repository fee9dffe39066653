#pragma once

namespace nanogrid {

/// Ratings, limits and droop slopes of the islanded nanogrid.
///
/// Defaults are the reference system: 2230 W PV, 1000 W auxiliary turbine,
/// 100 Ah / 120 V EV battery, SOC window 40..95 %, +-1000 W battery power.
struct NanogridParams {
    double pv_rating_w = 2230.0;
    double aux_rating_w = 1000.0;
    double battery_capacity_ah = 100.0;
    double battery_voltage_v = 120.0;
    double soc_max_pct = 95.0;
    double soc_min_plus10_pct = 50.0;
    double soc_min_pct = 40.0;
    double charge_max_w = 1000.0;
    double discharge_max_w = 1000.0;
    double omega_nominal = 314.16;  // rad/s
    double m_pv = 0.75e-4;          // rad/s per W
    double m_aux = 0.75e-4;         // rad/s per W
    double n_reactive = 0.75e-4;    // V/Var, carried for completeness only

    /// Over-frequency shift that fully curtails a PV array at rating.
    double shift_plus_max() const noexcept { return m_pv * pv_rating_w; }

    /// Under-frequency shift that fully dispatches the auxiliary unit.
    double shift_minus_max() const noexcept { return m_aux * aux_rating_w; }

    double battery_energy_wh() const noexcept { return battery_capacity_ah * battery_voltage_v; }

    /// Throws ValidationError unless soc_min < soc_min_plus10 < soc_max and
    /// every rating, limit and slope is finite and positive.
    void validate() const;

    bool operator==(const NanogridParams&) const = default;
};

}  // namespace nanogrid
