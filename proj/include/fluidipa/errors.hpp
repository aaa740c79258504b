#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluidipa {

// Invalid argument or configuration value.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace fluidipa
