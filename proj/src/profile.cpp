#include "nanogrid/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nanogrid/error.hpp"
#include "nanogrid/io.hpp"
#include "nanogrid/keyvalue.hpp"

namespace nanogrid {

Profile::Profile(std::string name, std::vector<ProfileSample> samples)
    : name_(std::move(name)), samples_(std::move(samples)) {
    if (samples_.size() < 2)
        throw ValidationError("profile '" + name_ + "': need at least 2 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.t_s) || !std::isfinite(s.value_w))
            throw ValidationError("profile '" + name_ + "': non-finite sample");
        if (s.value_w < 0.0)
            throw ValidationError("profile '" + name_ + "': negative value at t=" +
                                  format_exact(s.t_s));
        if (i > 0 && !(s.t_s > samples_[i - 1].t_s))
            throw ValidationError("profile '" + name_ + "': time not strictly increasing at t=" +
                                  format_exact(s.t_s));
    }
}

double Profile::at(double t_s) const {
    if (!(t_s >= t_begin() && t_s <= t_end()))
        throw ProfileOutOfRange("profile '" + name_ + "': t=" + format_exact(t_s) +
                                " outside [" + format_exact(t_begin()) + ", " +
                                format_exact(t_end()) + "]");
    // First sample with t > t_s; t_s == t_end maps to the last segment's end.
    auto hi = std::upper_bound(samples_.begin(), samples_.end(), t_s,
                               [](double t, const ProfileSample& s) { return t < s.t_s; });
    if (hi == samples_.end()) return samples_.back().value_w;
    auto lo = hi - 1;
    if (lo->t_s == t_s) return lo->value_w;
    const double f = (t_s - lo->t_s) / (hi->t_s - lo->t_s);
    return lo->value_w + f * (hi->value_w - lo->value_w);
}

double sample_profile(const Profile& profile, double t_s) { return profile.at(t_s); }

Profile load_profile(std::istream& in, std::string name) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<ProfileSample> samples;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string row = trim(line);
        if (row.empty()) continue;
        if (!have_header) {
            if (row != "t_s,power_w")
                throw ParseError("expected header 't_s,power_w', got '" + row + "'", lineno);
            have_header = true;
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected two comma-separated fields", lineno);
        samples.push_back({parse_double(trim(row.substr(0, comma)), lineno),
                           parse_double(trim(row.substr(comma + 1)), lineno)});
    }
    if (!have_header) throw ValidationError("profile '" + name + "': empty file");
    return Profile(std::move(name), std::move(samples));
}

Profile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile " + path.string());
    try {
        return load_profile(in, path.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

}  // namespace nanogrid
