#pragma once

// Text form of fuzzy systems, in the same flat key-value format as scenario
// configs. Used to dump the shipped controllers for audit and to read them back.

#include <string>
#include <string_view>
#include <vector>

#include "nanogrid/fuzzy.hpp"

namespace nanogrid {

std::string render_fuzzy_systems(const std::vector<fuzzy::FuzzySystem>& systems);

/// Throws ParseError or ValidationError.
std::vector<fuzzy::FuzzySystem> parse_fuzzy_systems(std::string_view text);

}  // namespace nanogrid
