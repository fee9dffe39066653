#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nanogrid/ems.hpp"
#include "nanogrid/params.hpp"
#include "nanogrid/profile.hpp"

namespace nanogrid {

struct Scenario {
    std::string name = "scenario";
    NanogridParams params{};
    double soc_init_pct = 50.0;
    std::string pv_profile;    // path, relative to the config file
    std::string load_profile;  // path, relative to the config file
    double load_multiplier = 1.0;
    ControllerKind controller = ControllerKind::Flc;
    double dt_s = 1.0;
    double duration_s = 43200.0;
    /// Time constant of the battery power measurement filter; 0 disables it.
    double power_filter_tau_s = 10.0;

    /// Throws ValidationError on any invariant breach.
    void validate() const;

    bool operator==(const Scenario&) const = default;
};

/// Parses the flat `key = value` config. Omitted fields keep their defaults.
Scenario parse_scenario(std::string_view text);
Scenario parse_scenario_file(const std::filesystem::path& path);

/// Inverse of parse_scenario; every field is written.
std::string render_scenario(const Scenario& scenario);

/// A scenario with its profiles loaded.
struct ScenarioBundle {
    Scenario scenario;
    Profile pv;
    Profile load;
};

/// Parses the config and loads both profiles relative to its directory.
ScenarioBundle load_scenario_bundle(const std::filesystem::path& config_path);

}  // namespace nanogrid
