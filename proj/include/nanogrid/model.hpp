#pragma once

// Quasi-static unit models. Droop responses settle within one step and the
// commanded frequency is the bus frequency.

#include "nanogrid/ems.hpp"
#include "nanogrid/params.hpp"

namespace nanogrid {

struct BusState {
    double omega = 0.0;
    double p_pv_avail = 0.0;
    double p_pv = 0.0;
    double p_aux = 0.0;
    double p_load = 0.0;
    double p_bat = 0.0;  // slack, > 0 charging
};

/// PV output after over-frequency curtailment. Never above p_avail, never below 0.
double pv_power(double omega, double p_avail, const NanogridParams& p) noexcept;

/// Auxiliary output: 0 at or above nominal, rises with under-frequency up to rating.
double aux_power(double omega, const NanogridParams& p) noexcept;

/// Units respond to omega_cmd and the battery takes the residual.
/// Throws SlackOverload when |p_bat| exceeds 4x the charging limit.
BusState grid_step(double omega_cmd, double p_avail, double p_load, const NanogridParams& p);

/// Coulomb counting at constant voltage and unit efficiency, clamped to [0, 100].
double battery_soc_update(const BatteryState& state, double dt_s, const NanogridParams& p);

/// Same update without the clamp.
double battery_soc_update_unclamped(const BatteryState& state, double dt_s,
                                    const NanogridParams& p) noexcept;

}  // namespace nanogrid
