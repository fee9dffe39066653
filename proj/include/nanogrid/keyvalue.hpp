#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nanogrid {

/// One `key = value` line of a flat config document.
struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line;
};

/// Splits `key = value` lines. Blank lines and `#` comments are skipped,
/// CR before LF is dropped. Throws ParseError on a line without `=`, an empty
/// key, or a repeated key.
std::vector<KeyValue> parse_key_values(std::string_view text);

std::string trim(std::string_view s);

}  // namespace nanogrid
