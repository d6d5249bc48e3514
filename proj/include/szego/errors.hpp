#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace szego {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (pole of gamma, z = 0 for phi, ...).
struct DomainError : Error {
    using Error::Error;
};

// Bad or unknown configuration: unknown family name, parameter out of range.
struct ParameterError : Error {
    using Error::Error;
};

// An iteration failed to converge (Newton refinement, trace bracketing, ...).
struct ConvergenceError : Error {
    using Error::Error;
};

// Adaptive quadrature could not meet the requested tolerance.  Carries the
// best estimate obtained so far.
struct ToleranceError : Error {
    ToleranceError(const std::string& msg, std::complex<double> best, double err)
        : Error(msg), best_estimate(best), error_estimate(err) {}
    std::complex<double> best_estimate;
    double error_estimate;
};

// Requested point lies outside every declared growth sector.
struct OutOfSectorError : Error {
    using Error::Error;
};

// The corner scaling limit does not exist for this family (Re b_k - Re a >= lambda/2).
struct ScalingLimitDestroyedError : Error {
    using Error::Error;
};

// The constant of an arc scaling limit is zero or resonantly small; no zero
// predictions are available at this (xi, n).
struct DegenerateConstantError : Error {
    using Error::Error;
};

// Direction/exponent balance pattern with no covering theorem.
struct UnsupportedCaseError : Error {
    using Error::Error;
};

}  // namespace szego
