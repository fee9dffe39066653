#include "nanogrid/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "nanogrid/error.hpp"

namespace nanogrid {

namespace {

std::string to_chars_or_throw(double v, std::chars_format fmt, int precision) {
    if (v == 0.0) v = 0.0;  // no "-0"
    std::array<char, 64> buf{};
    const auto res = precision < 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt)
                                   : std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt,
                                                   precision);
    if (res.ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_exact(double v) { return to_chars_or_throw(v, std::chars_format::general, -1); }

std::string format_sig(double v, int digits) {
    return to_chars_or_throw(v, std::chars_format::general, digits);
}

double parse_double(std::string_view text, std::size_t line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != last)
        throw ParseError("not a number: '" + std::string(text) + "'", line);
    return v;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << format_sig(r.t_s) << ',' << format_sig(r.p_pv_avail_w) << ','
            << format_sig(r.p_pv_w) << ',' << format_sig(r.p_aux_w) << ','
            << format_sig(r.p_load_w) << ',' << format_sig(r.p_bat_w) << ','
            << format_sig(r.soc_pct) << ',' << format_sig(r.omega) << ','
            << format_sig(r.d_omega_plus) << ',' << format_sig(r.d_omega_minus) << '\n';
    }
}

void write_summary(std::ostream& out, const SummaryMetrics& m) {
    auto kv = [&out](const char* key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    kv("max_charge_w", format_exact(m.max_charge_w));
    kv("max_discharge_w", format_exact(m.max_discharge_w));
    kv("min_soc_pct", format_exact(m.min_soc_pct));
    kv("max_soc_pct", format_exact(m.max_soc_pct));
    kv("min_omega", format_exact(m.min_omega));
    kv("max_omega", format_exact(m.max_omega));
    kv("curtailed_energy_wh", format_exact(m.curtailed_energy_wh));
    kv("aux_energy_wh", format_exact(m.aux_energy_wh));
    kv("charging_fraction", format_exact(m.charging_fraction));
    kv("violations_charge", std::to_string(m.violations_charge));
    kv("violations_discharge", std::to_string(m.violations_discharge));
    kv("violations_soc_high", std::to_string(m.violations_soc_high));
    kv("violations_soc_low", std::to_string(m.violations_soc_low));
    kv("soc_clamp_events", std::to_string(m.soc_clamp_events));
}

OutputPaths write_outputs(const Trace& trace, const SummaryMetrics& metrics,
                          const std::filesystem::path& dir, const std::string& stem) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    OutputPaths paths{dir / (stem + "_trace.csv"), dir / (stem + "_summary.txt")};
    auto write = [](const std::filesystem::path& path, auto&& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + path.string() + " for writing");
        body(out);
        out.flush();
        if (!out) throw IoError("write failed: " + path.string());
    };
    write(paths.trace, [&](std::ostream& o) { write_trace_csv(o, trace); });
    write(paths.summary, [&](std::ostream& o) { write_summary(o, metrics); });
    return paths;
}

}  // namespace nanogrid
