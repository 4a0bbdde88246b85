#pragma once

#include <stdexcept>
#include <string>

namespace riskaverse {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value object violates its invariants (bad probabilities, empty support, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A scalar argument is outside the admissible range of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A parameter combination is inadmissible (p outside (0,1), CFL violation, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to converge.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Evaluation produced or encountered a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

} // namespace riskaverse
