#pragma once

#include <stdexcept>
#include <string>

namespace iotassure {

/// Unknown identifier (parameter id, phase id, format id, enum spelling).
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Inconsistent catalog, ruleset or policy configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A machine-format document could not be read back.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maintaining Access and Covering Tracks are recognised but never planned.
class UnsupportedPhaseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace iotassure
