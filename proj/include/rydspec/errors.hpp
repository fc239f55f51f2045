#pragma once

#include <stdexcept>
#include <string>

namespace rydspec {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or unsupported input: bad quantum numbers, malformed config,
// out-of-range parameters.  CLI maps these to exit code 2.
struct DomainError : Error {
    using Error::Error;
};

// A numerical routine failed to produce a trustworthy answer: eigensolver
// breakdown, singular steady-state system, non-converged fit.  CLI maps
// these to exit code 3.
struct SolverError : Error {
    using Error::Error;
};

// The steady state of the Liouvillian is not unique (kernel dimension > 1),
// so "the" stationary density matrix is ill-defined.
struct DegenerateSteadyStateError : SolverError {
    using SolverError::SolverError;
};

// A trace handed to the two-peak fitter shows fewer than two resolvable
// maxima.  Subclass of DomainError: the data, not the solver, is at fault.
struct SinglePeakError : DomainError {
    using DomainError::DomainError;
};

} // namespace rydspec
