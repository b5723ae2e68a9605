#pragma once

#include <stdexcept>
#include <string>

namespace rfswarm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration values.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A stochastic model that violates a structural requirement (e.g. reducibility).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Non-positive-definite covariance, singular innovation, and similar.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A state space or problem size exceeds the configured cap.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Events supplied out of temporal order.
class OrderingError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace rfswarm
