#pragma once

#include <stdexcept>
#include <string>

namespace nqcc {

/// Gate applied to a register it does not fit (bad index, wrong arity).
struct GateMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Readout requested on a register with support outside the pointer basis.
struct TranslatorDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Symbol sent on a channel whose endpoints do not carry it.
struct RoutingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Protocol run started without the channels it needs.
struct WiringError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Network construction with invalid parameters (skip too large, etc.).
struct ConstructionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Scenario configuration problem; `path` points at the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& field_path, const std::string& what_arg)
        : std::runtime_error(field_path + ": " + what_arg), path(field_path) {}
    std::string path;
};

} // namespace nqcc
