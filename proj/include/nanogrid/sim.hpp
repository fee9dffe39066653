#pragma once

#include <cstddef>
#include <vector>

#include "nanogrid/params.hpp"
#include "nanogrid/profile.hpp"
#include "nanogrid/scenario.hpp"

namespace nanogrid {

/// One simulation step. soc_pct is the state at the start of the interval and
/// the powers hold over [t_s, t_s + dt).
struct TimeStepRecord {
    double t_s = 0.0;
    double p_pv_avail_w = 0.0;
    double p_pv_w = 0.0;
    double p_aux_w = 0.0;
    double p_load_w = 0.0;
    double p_bat_w = 0.0;
    double soc_pct = 0.0;
    double omega = 0.0;
    double d_omega_plus = 0.0;
    double d_omega_minus = 0.0;
    bool soc_clamped = false;  // the update at the end of this step hit 0 or 100 %

    bool operator==(const TimeStepRecord&) const = default;
};

struct Trace {
    double dt_s = 1.0;
    std::vector<TimeStepRecord> records;

    bool operator==(const Trace&) const = default;
};

/// Closed loop at fixed step. The controller sees the previous step's battery
/// power (through the measurement filter); the first step sees 0 W.
/// Throws ProfileOutOfRange when a profile does not cover [0, duration].
Trace run_scenario(const Scenario& scenario, const Profile& pv, const Profile& load);
Trace run_scenario(const ScenarioBundle& bundle);

/// floor(duration / dt) + 1.
std::size_t step_count(double duration_s, double dt_s);

/// Tolerances for counting limit violations.
struct ViolationPolicy {
    double power_band = 0.05;       // fraction of the limit
    int power_band_max_steps = 3;   // consecutive in-band steps forgiven
    double soc_tolerance_pct = 0.1; // absolute, percentage points
};

struct SummaryMetrics {
    double max_charge_w = 0.0;
    double max_discharge_w = 0.0;
    double min_soc_pct = 0.0;
    double max_soc_pct = 0.0;
    double min_omega = 0.0;
    double max_omega = 0.0;
    double curtailed_energy_wh = 0.0;
    double aux_energy_wh = 0.0;
    double charging_fraction = 0.0;
    long violations_charge = 0;
    long violations_discharge = 0;
    long violations_soc_high = 0;
    long violations_soc_low = 0;
    long soc_clamp_events = 0;

    bool operator==(const SummaryMetrics&) const = default;
};

/// Throws EmptyTrace.
SummaryMetrics summarize(const Trace& trace, const NanogridParams& params,
                         const ViolationPolicy& policy = {});

}  // namespace nanogrid
