#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation produced NaN or Inf. Trajectory loops map this to a
/// stopped:overflow status instead of propagating it.
class NumericalOverflow : public Error {
public:
    explicit NumericalOverflow(const std::string& what)
        : Error("numerical overflow: " + what) {}
};

/// Invalid user input (configuration, preconditions on arguments).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace geoflow
