#ifndef MLRFUN_ERRORS_HPP
#define MLRFUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, violated preconditions, poles. CLI exit code 2.
struct DomainError : Error {
    using Error::Error;
};

// Invalid bisection bracket. CLI exit code 2.
struct BracketError : DomainError {
    using DomainError::DomainError;
};

// Series or quadrature failed to converge within its budget. CLI exit code 3.
struct ConvergenceError : Error {
    using Error::Error;
};

// A requested tolerance could not be met. CLI exit code 3.
struct ToleranceError : ConvergenceError {
    using ConvergenceError::ConvergenceError;
};

}  // namespace mlr

#endif
