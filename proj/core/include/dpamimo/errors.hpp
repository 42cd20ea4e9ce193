#pragma once

#include <stdexcept>
#include <string>

namespace dpamimo {

/// Precondition on a numeric argument failed (non-positive frequency, empty set, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configuration value is missing, unknown or inconsistent. `path()` names the
/// offending field in the scenario document, e.g. "fabric/n_wigig_if".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string message, std::string path = {})
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A fabric state references resources that do not exist in its config.
/// Distinct from logical violations, which `validate` reports as values.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dpamimo
