#pragma once

#include <stdexcept>
#include <string>

namespace dirichlet {

/// Violated precondition or malformed input. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed request that the mathematics cannot honor (exit code 3).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested mode has zero actuator overlap and cannot be steered.
class BlockedModeError : public DomainError {
public:
    BlockedModeError(int mode, const std::string& message)
        : DomainError(message), mode_(mode) {}

    int mode() const noexcept { return mode_; }

private:
    int mode_;
};

/// Linear solve residual exceeded its acceptance threshold.
class ConditioningError : public DomainError {
public:
    using DomainError::DomainError;
};

/// File could not be read or written (exit code 1).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dirichlet
