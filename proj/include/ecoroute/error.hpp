#pragma once

#include <stdexcept>
#include <string>

namespace ecoroute {

/// Configuration or input that violates a type invariant. `path()` names the
/// offending field in dotted/bracket form, e.g. `arrivals.catalog[3].tolerance`.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string path, const std::string& what)
        : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No hosted model can satisfy a task's tolerance within its remaining slack.
class InfeasibleTask : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ecoroute
