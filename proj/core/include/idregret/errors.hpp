#pragma once

#include <stdexcept>
#include <string>

namespace idregret {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric routine failed to meet its accuracy contract (mass bound,
/// quadrature residual, monotonicity, solve residual, ...).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Invalid model, prior, grid or schedule specification.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Grid or matrix size exceeds the dense / desk-scale budget.
class BudgetError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// An operation was called on a process of the wrong recurrence class.
class ClassificationError : public Error {
public:
    using Error::Error;
};

}  // namespace idregret
