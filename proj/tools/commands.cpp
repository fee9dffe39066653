#include "commands.hpp"

#include <array>
#include <fstream>
#include <future>
#include <iomanip>
#include <string>

#include "nanogrid/error.hpp"
#include "nanogrid/fis_text.hpp"
#include "nanogrid/io.hpp"
#include "nanogrid/scenario.hpp"
#include "nanogrid/sim.hpp"

namespace nanogrid::cli {

namespace {

struct RunOutcome {
    ControllerKind kind;
    SummaryMetrics metrics;
    OutputPaths paths;
};

RunOutcome execute(const ScenarioBundle& bundle, ControllerKind kind,
                   const std::filesystem::path& out_dir) {
    ScenarioBundle b = bundle;
    b.scenario.controller = kind;
    const Trace trace = run_scenario(b);
    const SummaryMetrics metrics = summarize(trace, b.scenario.params);
    const std::string stem = b.scenario.name + "_" + std::string(to_string(kind));
    return {kind, metrics, write_outputs(trace, metrics, out_dir, stem)};
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        fn();
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int cmd_run(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
            std::optional<ControllerKind> controller, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioBundle bundle = load_scenario_bundle(scenario);
        const RunOutcome r =
            execute(bundle, controller.value_or(bundle.scenario.controller), out_dir);
        out << "# " << bundle.scenario.name << " (" << to_string(r.kind) << ")\n";
        write_summary(out, r.metrics);
    });
}

int cmd_compare(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
                std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioBundle bundle = load_scenario_bundle(scenario);
        auto flc = std::async(std::launch::async, execute, std::cref(bundle), ControllerKind::Flc,
                              std::cref(out_dir));
        const RunOutcome prop = execute(bundle, ControllerKind::Proportional, out_dir);
        const RunOutcome fl = flc.get();

        struct Row {
            const char* label;
            std::string flc;
            std::string prop;
        };
        auto num = [](double v) { return format_sig(v, 6); };
        auto count = [](long v) { return std::to_string(v); };
        const auto max_abs = [](const SummaryMetrics& m) {
            return std::max(m.max_charge_w, m.max_discharge_w);
        };
        const std::array<Row, 11> rows{{
            {"violations_charge", count(fl.metrics.violations_charge),
             count(prop.metrics.violations_charge)},
            {"violations_discharge", count(fl.metrics.violations_discharge),
             count(prop.metrics.violations_discharge)},
            {"violations_soc_high", count(fl.metrics.violations_soc_high),
             count(prop.metrics.violations_soc_high)},
            {"violations_soc_low", count(fl.metrics.violations_soc_low),
             count(prop.metrics.violations_soc_low)},
            {"min_soc_pct", num(fl.metrics.min_soc_pct), num(prop.metrics.min_soc_pct)},
            {"max_soc_pct", num(fl.metrics.max_soc_pct), num(prop.metrics.max_soc_pct)},
            {"max_abs_p_bat_w", num(max_abs(fl.metrics)), num(max_abs(prop.metrics))},
            {"charging_fraction", num(fl.metrics.charging_fraction),
             num(prop.metrics.charging_fraction)},
            {"aux_energy_wh", num(fl.metrics.aux_energy_wh), num(prop.metrics.aux_energy_wh)},
            {"curtailed_energy_wh", num(fl.metrics.curtailed_energy_wh),
             num(prop.metrics.curtailed_energy_wh)},
            {"min_omega", num(fl.metrics.min_omega), num(prop.metrics.min_omega)},
        }};
        out << "# " << bundle.scenario.name << '\n';
        out << std::left << std::setw(24) << "metric" << std::setw(16) << "flc"
            << "proportional" << '\n';
        for (const auto& r : rows)
            out << std::left << std::setw(24) << r.label << std::setw(16) << r.flc << r.prop
                << '\n';
    });
}

int cmd_dump_fis(const std::filesystem::path& out_path, std::ostream& err) {
    return guarded(err, [&] {
        const FlcController controller{NanogridParams{}};
        const std::string text =
            render_fuzzy_systems({controller.charge_guard(), controller.discharge_guard()});
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + out_path.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw IoError("write failed: " + out_path.string());
    });
}

}  // namespace nanogrid::cli
