#pragma once

#include <stdexcept>
#include <string>

namespace pwg {

// Bad arguments to a library call (preconditions violated).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Symmetric matrix with unit diagonal that is not positive semidefinite.
class NotACorrelation : public InvalidInput {
public:
    explicit NotACorrelation(const std::string& what) : InvalidInput(what) {}
};

// The path-weighting kernels need rho^{-1}; the factored correlation does not
// provide one. Covariance inflation is the supported way out.
class SingularCorrelation : public std::runtime_error {
public:
    explicit SingularCorrelation(const std::string& what) : std::runtime_error(what) {}
};

// Problems with an experiment config file (missing keys, bad values,
// inconsistent schedules). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or a numerically impossible state. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pwg
