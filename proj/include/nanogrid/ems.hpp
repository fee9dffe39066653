#pragma once

// Supervisory energy management for the EV battery unit.
//
// The controller never talks to the other units. It shifts the bus frequency
// it forms: a positive shift makes the PV inverter curtail through its droop,
// a negative shift makes the floating auxiliary unit inject.

#include <memory>
#include <string>
#include <string_view>

#include "nanogrid/fuzzy.hpp"
#include "nanogrid/params.hpp"

namespace nanogrid {

/// Battery operating point. p_bat_w > 0 is charging, < 0 discharging.
struct BatteryState {
    double soc_pct = 0.0;
    double p_bat_w = 0.0;

    double charge_w() const noexcept { return p_bat_w > 0.0 ? p_bat_w : 0.0; }
    double discharge_w() const noexcept { return p_bat_w < 0.0 ? -p_bat_w : 0.0; }
};

struct FrequencyCommand {
    double d_omega_plus = 0.0;   // >= 0
    double d_omega_minus = 0.0;  // <= 0
    double omega_cmd = 0.0;
};

// Normalized headroom signals, each clamped to [0, 1].

/// Distance below SOC_max over the SOC_max..SOC_min span.
double normalize_soc_high(double soc_pct, const NanogridParams& p) noexcept;
/// Remaining charging headroom as a fraction of the charging limit.
double normalize_charge(double p_charge_w, const NanogridParams& p) noexcept;
/// Distance above SOC_min over the SOC_min..SOC_min+10% span.
double normalize_soc_low(double soc_pct, const NanogridParams& p) noexcept;
/// Remaining discharging headroom as a fraction of the discharging limit.
double normalize_discharge(double p_discharge_w, const NanogridParams& p) noexcept;

enum class ControllerKind { Flc, Proportional };

std::string_view to_string(ControllerKind kind) noexcept;
/// Accepts "flc" and "proportional"; throws ValidationError otherwise.
ControllerKind parse_controller_kind(std::string_view text);

/// Term names shared by both subsystems.
namespace terms {
inline constexpr const char* kLow = "Low";
inline constexpr const char* kMed = "Med";
inline constexpr const char* kHigh = "High";
inline constexpr const char* kZero = "Zero";
inline constexpr const char* kSmall = "Small";
inline constexpr const char* kLarge = "Large";
}  // namespace terms

/// Top subsystem: (soc-high headroom, charge headroom) -> curtailment shift magnitude.
fuzzy::FuzzySystem make_charge_guard_system(const NanogridParams& p);
/// Bottom subsystem: (soc-low headroom, discharge headroom) -> support shift magnitude.
fuzzy::FuzzySystem make_discharge_guard_system(const NanogridParams& p);

/// Maps a raw centroid onto [0, bound]: the Zero term's centroid goes to 0 and
/// the Large term's centroid to the bound.
class ShiftCalibration {
public:
    explicit ShiftCalibration(const fuzzy::FuzzySystem& system);

    double apply(double raw_centroid) const noexcept;

    double zero_centroid() const noexcept { return c0_; }
    double large_centroid() const noexcept { return c1_; }
    double bound() const noexcept { return bound_; }

private:
    double c0_;
    double c1_;
    double bound_;
};

class SupervisoryController {
public:
    virtual ~SupervisoryController() = default;
    virtual FrequencyCommand step(const BatteryState& state) const = 0;
    virtual ControllerKind kind() const noexcept = 0;
};

/// Two-subsystem fuzzy controller.
class FlcController final : public SupervisoryController {
public:
    explicit FlcController(const NanogridParams& params);

    /// Inputs in [0, 1]; result in [0, shift_plus_max].
    double shift_plus(double d_soc1, double d_p_charge) const;
    /// Inputs in [0, 1]; result in [-shift_minus_max, 0].
    double shift_minus(double d_soc2, double d_p_discharge) const;

    FrequencyCommand step(const BatteryState& state) const override;
    ControllerKind kind() const noexcept override { return ControllerKind::Flc; }

    const NanogridParams& params() const noexcept { return params_; }
    const fuzzy::FuzzySystem& charge_guard() const noexcept { return charge_guard_; }
    const fuzzy::FuzzySystem& discharge_guard() const noexcept { return discharge_guard_; }

private:
    NanogridParams params_;
    fuzzy::FuzzySystem charge_guard_;
    fuzzy::FuzzySystem discharge_guard_;
    ShiftCalibration plus_cal_;
    ShiftCalibration minus_cal_;
};

/// Baseline that scales the shifts by SOC alone and ignores power headroom.
class ProportionalController final : public SupervisoryController {
public:
    explicit ProportionalController(const NanogridParams& params) : params_(params) {}

    FrequencyCommand step(const BatteryState& state) const override;
    ControllerKind kind() const noexcept override { return ControllerKind::Proportional; }

private:
    NanogridParams params_;
};

std::unique_ptr<SupervisoryController> make_controller(ControllerKind kind,
                                                       const NanogridParams& params);

// One-shot forms. Each builds the fuzzy systems; prefer FlcController in loops.
double flc_shift_plus(double d_soc1, double d_p_charge, const NanogridParams& p);
double flc_shift_minus(double d_soc2, double d_p_discharge, const NanogridParams& p);
FrequencyCommand ems_step(const BatteryState& state, const NanogridParams& p);
FrequencyCommand proportional_step(const BatteryState& state, const NanogridParams& p);

}  // namespace nanogrid
