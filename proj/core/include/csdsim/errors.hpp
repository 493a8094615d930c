#pragma once

#include <stdexcept>
#include <string>

namespace csdsim {

/// Bad numeric input to a formula (division by zero, out-of-domain argument).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Illegal lifecycle transition or out-of-order event.
class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data (CSV rows, schedules, histories).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration; message aggregates the offending fields.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure while reading or writing outputs.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace csdsim
