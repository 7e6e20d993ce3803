#pragma once

#include <stdexcept>
#include <string>

namespace mcflab {

// Bad user input: unknown keys, invalid values, impossible grids.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// NaN/Inf or a solver state that cannot continue.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A --check assertion failed.
struct CheckFailure : std::runtime_error {
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mcflab
