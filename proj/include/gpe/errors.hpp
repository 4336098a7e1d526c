#pragma once

#include <stdexcept>
#include <string>

namespace gpe {

/// Bad arguments or malformed inputs (shape mismatches, out-of-range
/// parameters, model/no-solution combinations rejected up front).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A linear solve or eigensolve broke down.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration budget exhausted before the stopping criterion was met.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double last_residual)
        : std::runtime_error(what), residual(last_residual) {}
    double residual;
};

/// Non-finite values or gross mass loss during time stepping.
class BlowUp : public std::runtime_error {
public:
    BlowUp(const std::string& what, double time)
        : std::runtime_error(what), t(time) {}
    double t;
};

} // namespace gpe
