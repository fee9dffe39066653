#include "nanogrid/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nanogrid/ems.hpp"
#include "nanogrid/error.hpp"
#include "nanogrid/model.hpp"

namespace nanogrid {

std::size_t step_count(double duration_s, double dt_s) {
    // The epsilon keeps duration = k * dt from losing its last step to rounding.
    return static_cast<std::size_t>(std::floor(duration_s / dt_s + 1e-9)) + 1;
}

Trace run_scenario(const Scenario& scenario, const Profile& pv, const Profile& load) {
    scenario.validate();
    const NanogridParams& params = scenario.params;
    const auto controller = make_controller(scenario.controller, params);
    const std::size_t n = step_count(scenario.duration_s, scenario.dt_s);
    const double dt = scenario.dt_s;
    const double alpha = scenario.power_filter_tau_s > 0.0
                             ? 1.0 - std::exp(-dt / scenario.power_filter_tau_s)
                             : 1.0;

    Trace trace;
    trace.dt_s = dt;
    trace.records.reserve(n);

    double soc = scenario.soc_init_pct;
    double p_measured = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double p_avail = pv.at(t);
        const double p_load = scenario.load_multiplier * load.at(t);

        const FrequencyCommand cmd = controller->step(BatteryState{soc, p_measured});
        const BusState bus = grid_step(cmd.omega_cmd, p_avail, p_load, params);

        const double raw_soc = battery_soc_update_unclamped({soc, bus.p_bat}, dt, params);
        const double next_soc = battery_soc_update({soc, bus.p_bat}, dt, params);

        TimeStepRecord rec;
        rec.t_s = t;
        rec.p_pv_avail_w = bus.p_pv_avail;
        rec.p_pv_w = bus.p_pv;
        rec.p_aux_w = bus.p_aux;
        rec.p_load_w = bus.p_load;
        rec.p_bat_w = bus.p_bat;
        rec.soc_pct = soc;
        rec.omega = bus.omega;
        rec.d_omega_plus = cmd.d_omega_plus;
        rec.d_omega_minus = cmd.d_omega_minus;
        rec.soc_clamped = raw_soc != next_soc;
        trace.records.push_back(rec);

        p_measured += alpha * (bus.p_bat - p_measured);
        soc = next_soc;
    }
    return trace;
}

Trace run_scenario(const ScenarioBundle& bundle) {
    return run_scenario(bundle.scenario, bundle.pv, bundle.load);
}

namespace {

// Counts steps above a limit, forgiving short excursions inside a tolerance band.
class BandViolationCounter {
public:
    BandViolationCounter(double limit, const ViolationPolicy& policy)
        : limit_(limit), hard_(limit * (1.0 + policy.power_band)),
          max_steps_(policy.power_band_max_steps) {}

    void feed(double v) {
        if (v > limit_) {
            ++run_;
            if (v > hard_ || run_ > max_steps_) ++count_;
        } else {
            run_ = 0;
        }
    }

    long count() const noexcept { return count_; }

private:
    double limit_;
    double hard_;
    int max_steps_;
    int run_ = 0;
    long count_ = 0;
};

}  // namespace

SummaryMetrics summarize(const Trace& trace, const NanogridParams& params,
                         const ViolationPolicy& policy) {
    if (trace.records.empty()) throw EmptyTrace("summarize: trace has no records");

    SummaryMetrics m;
    m.min_soc_pct = std::numeric_limits<double>::infinity();
    m.max_soc_pct = -std::numeric_limits<double>::infinity();
    m.min_omega = std::numeric_limits<double>::infinity();
    m.max_omega = -std::numeric_limits<double>::infinity();

    BandViolationCounter charge(params.charge_max_w, policy);
    BandViolationCounter discharge(params.discharge_max_w, policy);
    const double hours = trace.dt_s / 3600.0;
    std::size_t charging_steps = 0;

    for (const auto& r : trace.records) {
        const double p_charge = std::max(r.p_bat_w, 0.0);
        const double p_discharge = std::max(-r.p_bat_w, 0.0);
        m.max_charge_w = std::max(m.max_charge_w, p_charge);
        m.max_discharge_w = std::max(m.max_discharge_w, p_discharge);
        m.min_soc_pct = std::min(m.min_soc_pct, r.soc_pct);
        m.max_soc_pct = std::max(m.max_soc_pct, r.soc_pct);
        m.min_omega = std::min(m.min_omega, r.omega);
        m.max_omega = std::max(m.max_omega, r.omega);
        m.curtailed_energy_wh += (r.p_pv_avail_w - r.p_pv_w) * hours;
        m.aux_energy_wh += r.p_aux_w * hours;
        if (r.p_bat_w > 0.0) ++charging_steps;

        charge.feed(p_charge);
        discharge.feed(p_discharge);
        if (r.soc_pct > params.soc_max_pct + policy.soc_tolerance_pct) ++m.violations_soc_high;
        if (r.soc_pct < params.soc_min_pct - policy.soc_tolerance_pct) ++m.violations_soc_low;
        if (r.soc_clamped) ++m.soc_clamp_events;
    }
    m.violations_charge = charge.count();
    m.violations_discharge = discharge.count();
    m.charging_fraction =
        static_cast<double>(charging_steps) / static_cast<double>(trace.records.size());
    return m;
}

}  // namespace nanogrid
