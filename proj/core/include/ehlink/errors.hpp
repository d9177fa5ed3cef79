#pragma once

#include <stdexcept>
#include <string>

namespace ehlink {

/// A policy or caller broke a precondition of the energy bookkeeping
/// (e.g. drawing more energy than the battery holds). Always a bug in
/// the caller, never a data error.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Invalid configuration (file contents, parameter ranges, unknown keys).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ehlink
