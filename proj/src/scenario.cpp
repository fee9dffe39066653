#include "nanogrid/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nanogrid/error.hpp"
#include "nanogrid/io.hpp"
#include "nanogrid/keyvalue.hpp"

namespace nanogrid {

namespace {

struct ParamField {
    const char* key;
    double NanogridParams::*member;
};

constexpr std::array<ParamField, 13> kParamFields{{
    {"pv_rating_w", &NanogridParams::pv_rating_w},
    {"aux_rating_w", &NanogridParams::aux_rating_w},
    {"battery_capacity_ah", &NanogridParams::battery_capacity_ah},
    {"battery_voltage_v", &NanogridParams::battery_voltage_v},
    {"soc_max_pct", &NanogridParams::soc_max_pct},
    {"soc_min_plus10_pct", &NanogridParams::soc_min_plus10_pct},
    {"soc_min_pct", &NanogridParams::soc_min_pct},
    {"charge_max_w", &NanogridParams::charge_max_w},
    {"discharge_max_w", &NanogridParams::discharge_max_w},
    {"omega_nominal", &NanogridParams::omega_nominal},
    {"m_pv", &NanogridParams::m_pv},
    {"m_aux", &NanogridParams::m_aux},
    {"n_reactive", &NanogridParams::n_reactive},
}};

constexpr std::string_view kParamPrefix = "params.";

}  // namespace

void Scenario::validate() const {
    params.validate();
    if (!(std::isfinite(dt_s) && dt_s > 0.0)) throw ValidationError("dt_s must be > 0");
    if (!(std::isfinite(duration_s) && duration_s >= dt_s))
        throw ValidationError("duration_s must be >= dt_s");
    if (!(std::isfinite(load_multiplier) && load_multiplier > 0.0))
        throw ValidationError("load_multiplier must be > 0");
    if (!(soc_init_pct >= 0.0 && soc_init_pct <= 100.0))
        throw ValidationError("soc_init_pct must be in [0, 100]");
    if (!(std::isfinite(power_filter_tau_s) && power_filter_tau_s >= 0.0))
        throw ValidationError("power_filter_tau_s must be >= 0");
    if (pv_profile.empty()) throw ValidationError("pv_profile is required");
    if (load_profile.empty()) throw ValidationError("load_profile is required");
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    for (const auto& kv : parse_key_values(text)) {
        const auto num = [&kv] { return parse_double(kv.value, kv.line); };
        if (kv.key == "name") {
            if (kv.value.empty()) throw ValidationError("name must not be empty");
            s.name = kv.value;
        } else if (kv.key == "pv_profile") {
            s.pv_profile = kv.value;
        } else if (kv.key == "load_profile") {
            s.load_profile = kv.value;
        } else if (kv.key == "load_multiplier") {
            s.load_multiplier = num();
        } else if (kv.key == "soc_init_pct") {
            s.soc_init_pct = num();
        } else if (kv.key == "controller") {
            s.controller = parse_controller_kind(kv.value);
        } else if (kv.key == "dt_s") {
            s.dt_s = num();
        } else if (kv.key == "duration_s") {
            s.duration_s = num();
        } else if (kv.key == "power_filter_tau_s") {
            s.power_filter_tau_s = num();
        } else if (kv.key.starts_with(kParamPrefix)) {
            const std::string_view field = std::string_view(kv.key).substr(kParamPrefix.size());
            bool found = false;
            for (const auto& f : kParamFields) {
                if (field == f.key) {
                    s.params.*f.member = num();
                    found = true;
                    break;
                }
            }
            if (!found) throw ValidationError("unknown parameter '" + kv.key + "'");
        } else {
            throw ValidationError("unknown key '" + kv.key + "' at line " +
                                  std::to_string(kv.line));
        }
    }
    s.validate();
    return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string render_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "name = " << s.name << '\n'
        << "pv_profile = " << s.pv_profile << '\n'
        << "load_profile = " << s.load_profile << '\n'
        << "load_multiplier = " << format_exact(s.load_multiplier) << '\n'
        << "soc_init_pct = " << format_exact(s.soc_init_pct) << '\n'
        << "controller = " << to_string(s.controller) << '\n'
        << "dt_s = " << format_exact(s.dt_s) << '\n'
        << "duration_s = " << format_exact(s.duration_s) << '\n'
        << "power_filter_tau_s = " << format_exact(s.power_filter_tau_s) << '\n';
    for (const auto& f : kParamFields)
        out << kParamPrefix << f.key << " = " << format_exact(s.params.*f.member) << '\n';
    return out.str();
}

ScenarioBundle load_scenario_bundle(const std::filesystem::path& config_path) {
    Scenario s = parse_scenario_file(config_path);
    const auto base = config_path.parent_path();
    auto resolve = [&base](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };
    Profile pv = load_profile(resolve(s.pv_profile));
    Profile load = load_profile(resolve(s.load_profile));
    return {std::move(s), std::move(pv), std::move(load)};
}

}  // namespace nanogrid
