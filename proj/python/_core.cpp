#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nanogrid/ems.hpp"
#include "nanogrid/error.hpp"
#include "nanogrid/fis_text.hpp"
#include "nanogrid/io.hpp"
#include "nanogrid/model.hpp"
#include "nanogrid/params.hpp"
#include "nanogrid/profile.hpp"
#include "nanogrid/scenario.hpp"
#include "nanogrid/sim.hpp"

namespace py = pybind11;
using namespace nanogrid;

namespace {

py::dict trace_columns(const Trace& t) {
    std::vector<double> cols[10];
    for (const auto& r : t.records) {
        const double v[10] = {r.t_s,   r.p_pv_avail_w, r.p_pv_w,       r.p_aux_w,
                              r.p_load_w, r.p_bat_w,   r.soc_pct,      r.omega,
                              r.d_omega_plus, r.d_omega_minus};
        for (int i = 0; i < 10; ++i) cols[i].push_back(v[i]);
    }
    static const char* names[10] = {"t_s",     "p_pv_avail_w", "p_pv_w",       "p_aux_w",
                                    "p_load_w", "p_bat_w",     "soc_pct",      "omega",
                                    "d_omega_plus", "d_omega_minus"};
    py::dict d;
    for (int i = 0; i < 10; ++i) d[names[i]] = cols[i];
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Frequency-signalled nanogrid energy management";

    auto base = py::register_exception<Error>(m, "NanogridError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<ProfileOutOfRange>(m, "ProfileOutOfRange", base.ptr());
    py::register_exception<SlackOverload>(m, "SlackOverload", base.ptr());
    py::register_exception<EmptyAggregate>(m, "EmptyAggregate", base.ptr());
    py::register_exception<EmptyTrace>(m, "EmptyTrace", base.ptr());

    py::class_<NanogridParams>(m, "NanogridParams")
        .def(py::init<>())
        .def_readwrite("pv_rating_w", &NanogridParams::pv_rating_w)
        .def_readwrite("aux_rating_w", &NanogridParams::aux_rating_w)
        .def_readwrite("battery_capacity_ah", &NanogridParams::battery_capacity_ah)
        .def_readwrite("battery_voltage_v", &NanogridParams::battery_voltage_v)
        .def_readwrite("soc_max_pct", &NanogridParams::soc_max_pct)
        .def_readwrite("soc_min_plus10_pct", &NanogridParams::soc_min_plus10_pct)
        .def_readwrite("soc_min_pct", &NanogridParams::soc_min_pct)
        .def_readwrite("charge_max_w", &NanogridParams::charge_max_w)
        .def_readwrite("discharge_max_w", &NanogridParams::discharge_max_w)
        .def_readwrite("omega_nominal", &NanogridParams::omega_nominal)
        .def_readwrite("m_pv", &NanogridParams::m_pv)
        .def_readwrite("m_aux", &NanogridParams::m_aux)
        .def_readwrite("n_reactive", &NanogridParams::n_reactive)
        .def("shift_plus_max", &NanogridParams::shift_plus_max)
        .def("shift_minus_max", &NanogridParams::shift_minus_max)
        .def("battery_energy_wh", &NanogridParams::battery_energy_wh)
        .def("validate", &NanogridParams::validate)
        .def(py::self == py::self);

    py::class_<BatteryState>(m, "BatteryState")
        .def(py::init<double, double>(), py::arg("soc_pct"), py::arg("p_bat_w") = 0.0)
        .def_readwrite("soc_pct", &BatteryState::soc_pct)
        .def_readwrite("p_bat_w", &BatteryState::p_bat_w);

    py::class_<FrequencyCommand>(m, "FrequencyCommand")
        .def_readonly("d_omega_plus", &FrequencyCommand::d_omega_plus)
        .def_readonly("d_omega_minus", &FrequencyCommand::d_omega_minus)
        .def_readonly("omega_cmd", &FrequencyCommand::omega_cmd)
        .def("__repr__", [](const FrequencyCommand& c) {
            return "FrequencyCommand(d_omega_plus=" + format_exact(c.d_omega_plus) +
                   ", d_omega_minus=" + format_exact(c.d_omega_minus) +
                   ", omega_cmd=" + format_exact(c.omega_cmd) + ")";
        });

    py::enum_<ControllerKind>(m, "ControllerKind")
        .value("FLC", ControllerKind::Flc)
        .value("PROPORTIONAL", ControllerKind::Proportional);

    const NanogridParams defaults;
    m.def("normalize_soc_high", &normalize_soc_high, py::arg("soc_pct"), py::arg("params") = defaults);
    m.def("normalize_charge", &normalize_charge, py::arg("p_charge_w"), py::arg("params") = defaults);
    m.def("normalize_soc_low", &normalize_soc_low, py::arg("soc_pct"), py::arg("params") = defaults);
    m.def("normalize_discharge", &normalize_discharge, py::arg("p_discharge_w"),
          py::arg("params") = defaults);

    py::class_<FlcController>(m, "FlcController")
        .def(py::init<const NanogridParams&>(), py::arg("params") = defaults)
        .def("shift_plus", &FlcController::shift_plus, py::arg("d_soc1"), py::arg("d_p_charge"))
        .def("shift_minus", &FlcController::shift_minus, py::arg("d_soc2"),
             py::arg("d_p_discharge"))
        .def("step", &FlcController::step, py::arg("state"))
        .def("dump_fis", [](const FlcController& c) {
            return render_fuzzy_systems({c.charge_guard(), c.discharge_guard()});
        });

    m.def("ems_step", &ems_step, py::arg("state"), py::arg("params") = defaults);
    m.def("proportional_step", &proportional_step, py::arg("state"), py::arg("params") = defaults);

    py::class_<BusState>(m, "BusState")
        .def_readonly("omega", &BusState::omega)
        .def_readonly("p_pv_avail", &BusState::p_pv_avail)
        .def_readonly("p_pv", &BusState::p_pv)
        .def_readonly("p_aux", &BusState::p_aux)
        .def_readonly("p_load", &BusState::p_load)
        .def_readonly("p_bat", &BusState::p_bat);

    m.def("pv_power", &pv_power, py::arg("omega"), py::arg("p_avail"), py::arg("params") = defaults);
    m.def("aux_power", &aux_power, py::arg("omega"), py::arg("params") = defaults);
    m.def("grid_step", &grid_step, py::arg("omega_cmd"), py::arg("p_avail"), py::arg("p_load"),
          py::arg("params") = defaults);
    m.def("battery_soc_update", &battery_soc_update, py::arg("state"), py::arg("dt_s"),
          py::arg("params") = defaults);

    py::class_<Profile>(m, "Profile")
        .def(py::init([](std::string name, const std::vector<std::pair<double, double>>& pts) {
                 std::vector<ProfileSample> s;
                 for (const auto& [t, v] : pts) s.push_back({t, v});
                 return Profile(std::move(name), std::move(s));
             }),
             py::arg("name"), py::arg("samples"))
        .def_property_readonly("name", &Profile::name)
        .def("at", &Profile::at, py::arg("t_s"))
        .def("__call__", &Profile::at, py::arg("t_s"));
    m.def("load_profile", py::overload_cast<const std::filesystem::path&>(&load_profile),
          py::arg("path"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("params", &Scenario::params)
        .def_readwrite("soc_init_pct", &Scenario::soc_init_pct)
        .def_readwrite("pv_profile", &Scenario::pv_profile)
        .def_readwrite("load_profile", &Scenario::load_profile)
        .def_readwrite("load_multiplier", &Scenario::load_multiplier)
        .def_readwrite("controller", &Scenario::controller)
        .def_readwrite("dt_s", &Scenario::dt_s)
        .def_readwrite("duration_s", &Scenario::duration_s)
        .def_readwrite("power_filter_tau_s", &Scenario::power_filter_tau_s)
        .def("validate", &Scenario::validate)
        .def(py::self == py::self);
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); },
          py::arg("text"));
    m.def("render_scenario", &render_scenario, py::arg("scenario"));

    py::class_<ScenarioBundle>(m, "ScenarioBundle")
        .def_readwrite("scenario", &ScenarioBundle::scenario)
        .def_readonly("pv", &ScenarioBundle::pv)
        .def_readonly("load", &ScenarioBundle::load);
    m.def("load_scenario_bundle", &load_scenario_bundle, py::arg("path"));

    py::class_<TimeStepRecord>(m, "TimeStepRecord")
        .def_readonly("t_s", &TimeStepRecord::t_s)
        .def_readonly("p_pv_avail_w", &TimeStepRecord::p_pv_avail_w)
        .def_readonly("p_pv_w", &TimeStepRecord::p_pv_w)
        .def_readonly("p_aux_w", &TimeStepRecord::p_aux_w)
        .def_readonly("p_load_w", &TimeStepRecord::p_load_w)
        .def_readonly("p_bat_w", &TimeStepRecord::p_bat_w)
        .def_readonly("soc_pct", &TimeStepRecord::soc_pct)
        .def_readonly("omega", &TimeStepRecord::omega)
        .def_readonly("d_omega_plus", &TimeStepRecord::d_omega_plus)
        .def_readonly("d_omega_minus", &TimeStepRecord::d_omega_minus)
        .def_readonly("soc_clamped", &TimeStepRecord::soc_clamped);

    py::class_<Trace>(m, "Trace")
        .def_readonly("dt_s", &Trace::dt_s)
        .def_readonly("records", &Trace::records)
        .def("__len__", [](const Trace& t) { return t.records.size(); })
        .def("columns", &trace_columns, "Trace as a dict of per-field lists.");

    m.def("run_scenario",
          py::overload_cast<const Scenario&, const Profile&, const Profile&>(&run_scenario),
          py::arg("scenario"), py::arg("pv"), py::arg("load"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_scenario", py::overload_cast<const ScenarioBundle&>(&run_scenario),
          py::arg("bundle"), py::call_guard<py::gil_scoped_release>());

    py::class_<SummaryMetrics>(m, "SummaryMetrics")
        .def_readonly("max_charge_w", &SummaryMetrics::max_charge_w)
        .def_readonly("max_discharge_w", &SummaryMetrics::max_discharge_w)
        .def_readonly("min_soc_pct", &SummaryMetrics::min_soc_pct)
        .def_readonly("max_soc_pct", &SummaryMetrics::max_soc_pct)
        .def_readonly("min_omega", &SummaryMetrics::min_omega)
        .def_readonly("max_omega", &SummaryMetrics::max_omega)
        .def_readonly("curtailed_energy_wh", &SummaryMetrics::curtailed_energy_wh)
        .def_readonly("aux_energy_wh", &SummaryMetrics::aux_energy_wh)
        .def_readonly("charging_fraction", &SummaryMetrics::charging_fraction)
        .def_readonly("violations_charge", &SummaryMetrics::violations_charge)
        .def_readonly("violations_discharge", &SummaryMetrics::violations_discharge)
        .def_readonly("violations_soc_high", &SummaryMetrics::violations_soc_high)
        .def_readonly("violations_soc_low", &SummaryMetrics::violations_soc_low)
        .def_readonly("soc_clamp_events", &SummaryMetrics::soc_clamp_events)
        .def("__str__", [](const SummaryMetrics& s) {
            std::ostringstream out;
            write_summary(out, s);
            return out.str();
        });
    m.def("summarize",
          [](const Trace& t, const NanogridParams& p) { return summarize(t, p); },
          py::arg("trace"), py::arg("params") = defaults);
    m.def("write_outputs",
          [](const Trace& t, const SummaryMetrics& s, const std::filesystem::path& dir,
             const std::string& stem) {
              const OutputPaths o = write_outputs(t, s, dir, stem);
              return py::make_tuple(o.trace, o.summary);
          },
          py::arg("trace"), py::arg("metrics"), py::arg("out_dir"), py::arg("stem"));
}
