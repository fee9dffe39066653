#include "nanogrid/ems.hpp"

#include <algorithm>
#include <array>

#include "nanogrid/error.hpp"

namespace nanogrid {

namespace {

double clamp01(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;
using fuzzy::Rule;
using fuzzy::Term;

LinguisticVariable headroom_input(std::string name) {
    return LinguisticVariable(std::move(name), 0.0, 1.0,
                              {{terms::kLow, MembershipFunction::triangular(0.0, 0.0, 0.5)},
                               {terms::kMed, MembershipFunction::triangular(0.0, 0.5, 1.0)},
                               {terms::kHigh, MembershipFunction::triangular(0.5, 1.0, 1.0)}});
}

LinguisticVariable shift_output(std::string name, double span) {
    return LinguisticVariable(
        std::move(name), 0.0, span,
        {{terms::kZero, MembershipFunction::triangular(0.0, 0.0, 0.4 * span)},
         {terms::kSmall, MembershipFunction::triangular(0.2 * span, 0.5 * span, 0.8 * span)},
         {terms::kLarge, MembershipFunction::triangular(0.6 * span, span, span)}});
}

// Rows: SOC headroom term. Columns: power headroom term. Little headroom in
// either input drives the shift to Large.
constexpr std::array<std::array<const char*, 3>, 3> kRuleTable{{
    //           Low            Med             High
    /* Low  */ {terms::kLarge, terms::kLarge, terms::kLarge},
    /* Med  */ {terms::kLarge, terms::kSmall, terms::kZero},
    /* High */ {terms::kLarge, terms::kZero, terms::kZero},
}};

fuzzy::FuzzySystem guard_system(std::string name, std::string soc_input, std::string power_input,
                                std::string output, double span) {
    static constexpr std::array<const char*, 3> kInputTerms{terms::kLow, terms::kMed,
                                                            terms::kHigh};
    std::vector<Rule> rules;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            rules.push_back(Rule{{{soc_input, kInputTerms[r]}, {power_input, kInputTerms[c]}},
                                 fuzzy::Connective::And,
                                 kRuleTable[r][c],
                                 1.0});
        }
    }
    return fuzzy::FuzzySystem(std::move(name), headroom_input(soc_input),
                              headroom_input(power_input), shift_output(std::move(output), span),
                              std::move(rules),
                              {fuzzy::AndOp::Product, fuzzy::Implication::Scale,
                               fuzzy::Aggregation::Sum});
}

}  // namespace

double normalize_soc_high(double soc_pct, const NanogridParams& p) noexcept {
    return clamp01((p.soc_max_pct - soc_pct) / (p.soc_max_pct - p.soc_min_pct));
}

double normalize_charge(double p_charge_w, const NanogridParams& p) noexcept {
    return clamp01((p.charge_max_w - p_charge_w) / p.charge_max_w);
}

double normalize_soc_low(double soc_pct, const NanogridParams& p) noexcept {
    return clamp01((soc_pct - p.soc_min_pct) / (p.soc_min_plus10_pct - p.soc_min_pct));
}

double normalize_discharge(double p_discharge_w, const NanogridParams& p) noexcept {
    return clamp01((p.discharge_max_w - p_discharge_w) / p.discharge_max_w);
}

std::string_view to_string(ControllerKind kind) noexcept {
    return kind == ControllerKind::Flc ? "flc" : "proportional";
}

ControllerKind parse_controller_kind(std::string_view text) {
    if (text == "flc") return ControllerKind::Flc;
    if (text == "proportional") return ControllerKind::Proportional;
    throw ValidationError("unknown controller kind '" + std::string(text) +
                          "' (expected flc or proportional)");
}

fuzzy::FuzzySystem make_charge_guard_system(const NanogridParams& p) {
    return guard_system("charge_guard", "delta_soc_high", "delta_p_charge", "shift_plus",
                        p.shift_plus_max());
}

fuzzy::FuzzySystem make_discharge_guard_system(const NanogridParams& p) {
    return guard_system("discharge_guard", "delta_soc_low", "delta_p_discharge",
                        "shift_minus_magnitude", p.shift_minus_max());
}

ShiftCalibration::ShiftCalibration(const fuzzy::FuzzySystem& system)
    : c0_(system.term_centroid(terms::kZero)),
      c1_(system.term_centroid(terms::kLarge)),
      bound_(system.output().hi()) {}

double ShiftCalibration::apply(double raw_centroid) const noexcept {
    // Snap the last-ulp noise of scaled single-term aggregates onto the ends.
    constexpr double kSnap = 1e-12;
    const double f = (raw_centroid - c0_) / (c1_ - c0_);
    if (f <= kSnap) return 0.0;
    if (f >= 1.0 - kSnap) return bound_;
    return bound_ * f;
}

FlcController::FlcController(const NanogridParams& params)
    : params_(params),
      charge_guard_(make_charge_guard_system(params)),
      discharge_guard_(make_discharge_guard_system(params)),
      plus_cal_(charge_guard_),
      minus_cal_(discharge_guard_) {
    params_.validate();
}

double FlcController::shift_plus(double d_soc1, double d_p_charge) const {
    return plus_cal_.apply(charge_guard_.infer(clamp01(d_soc1), clamp01(d_p_charge)));
}

double FlcController::shift_minus(double d_soc2, double d_p_discharge) const {
    return -minus_cal_.apply(discharge_guard_.infer(clamp01(d_soc2), clamp01(d_p_discharge)));
}

FrequencyCommand FlcController::step(const BatteryState& state) const {
    FrequencyCommand cmd;
    cmd.d_omega_plus = shift_plus(normalize_soc_high(state.soc_pct, params_),
                                  normalize_charge(state.charge_w(), params_));
    cmd.d_omega_minus = shift_minus(normalize_soc_low(state.soc_pct, params_),
                                    normalize_discharge(state.discharge_w(), params_));
    cmd.omega_cmd = params_.omega_nominal + cmd.d_omega_plus + cmd.d_omega_minus;
    return cmd;
}

FrequencyCommand ProportionalController::step(const BatteryState& state) const {
    FrequencyCommand cmd;
    cmd.d_omega_plus = params_.shift_plus_max() * (1.0 - normalize_soc_high(state.soc_pct, params_));
    cmd.d_omega_minus =
        -(params_.shift_minus_max() * (1.0 - normalize_soc_low(state.soc_pct, params_)));
    cmd.omega_cmd = params_.omega_nominal + cmd.d_omega_plus + cmd.d_omega_minus;
    return cmd;
}

std::unique_ptr<SupervisoryController> make_controller(ControllerKind kind,
                                                       const NanogridParams& params) {
    if (kind == ControllerKind::Flc) return std::make_unique<FlcController>(params);
    return std::make_unique<ProportionalController>(params);
}

double flc_shift_plus(double d_soc1, double d_p_charge, const NanogridParams& p) {
    return FlcController(p).shift_plus(d_soc1, d_p_charge);
}

double flc_shift_minus(double d_soc2, double d_p_discharge, const NanogridParams& p) {
    return FlcController(p).shift_minus(d_soc2, d_p_discharge);
}

FrequencyCommand ems_step(const BatteryState& state, const NanogridParams& p) {
    return FlcController(p).step(state);
}

FrequencyCommand proportional_step(const BatteryState& state, const NanogridParams& p) {
    return ProportionalController(p).step(state);
}

}  // namespace nanogrid
