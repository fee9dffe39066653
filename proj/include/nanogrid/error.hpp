#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nanogrid {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every rule fired at zero: the rule base does not cover the input.
class EmptyAggregate : public Error {
public:
    using Error::Error;
};

/// Battery slack power outside the range a sane scenario can produce.
class SlackOverload : public Error {
public:
    using Error::Error;
};

class ProfileOutOfRange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class EmptyTrace : public Error {
public:
    using Error::Error;
};

}  // namespace nanogrid
