#pragma once

// Text formats: trace CSV, summary key-value document, number formatting.
// Everything here is locale independent.

#include <filesystem>
#include <ostream>
#include <string>

#include "nanogrid/sim.hpp"

namespace nanogrid {

inline constexpr const char* kTraceHeader =
    "t_s,p_pv_avail_w,p_pv_w,p_aux_w,p_load_w,p_bat_w,soc_pct,omega_rad_s,d_omega_plus,"
    "d_omega_minus";

/// Shortest text that reads back to the same double.
std::string format_exact(double v);
/// `digits` significant digits, %g style.
std::string format_sig(double v, int digits = 6);

/// Strict full-string parse; throws ParseError (with `line` if non-zero).
double parse_double(std::string_view text, std::size_t line = 0);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_summary(std::ostream& out, const SummaryMetrics& m);

struct OutputPaths {
    std::filesystem::path trace;
    std::filesystem::path summary;
};

/// Writes `<stem>_trace.csv` and `<stem>_summary.txt` under dir, creating it.
/// Throws IoError.
OutputPaths write_outputs(const Trace& trace, const SummaryMetrics& metrics,
                          const std::filesystem::path& dir, const std::string& stem);

}  // namespace nanogrid
