#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace nanogrid {

struct ProfileSample {
    double t_s;
    double value_w;

    bool operator==(const ProfileSample&) const = default;
};

/// Piecewise-linear time series. Times strictly increase, values are
/// non-negative, and there are at least two samples.
class Profile {
public:
    Profile(std::string name, std::vector<ProfileSample> samples);

    const std::string& name() const noexcept { return name_; }
    const std::vector<ProfileSample>& samples() const noexcept { return samples_; }
    double t_begin() const noexcept { return samples_.front().t_s; }
    double t_end() const noexcept { return samples_.back().t_s; }

    /// Linear interpolation, exact at sample times. Throws ProfileOutOfRange.
    double at(double t_s) const;

    bool operator==(const Profile&) const = default;

private:
    std::string name_;
    std::vector<ProfileSample> samples_;
};

/// Parses `t_s,power_w` CSV text. Throws ParseError or ValidationError.
Profile load_profile(std::istream& in, std::string name);
Profile load_profile(const std::filesystem::path& path);

double sample_profile(const Profile& profile, double t_s);

}  // namespace nanogrid
