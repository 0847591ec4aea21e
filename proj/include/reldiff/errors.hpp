#ifndef RELDIFF_ERRORS_HPP
#define RELDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reldiff {

// Precondition violations (bad arguments, parameter bounds). CLI maps these
// to exit code 2.
struct validation_error : std::domain_error {
    explicit validation_error(const std::string& msg) : std::domain_error(msg) {}
};

// The log-volatility bound |zeta| * sigma^2 <= c.
struct bound_error : validation_error {
    explicit bound_error(const std::string& msg) : validation_error(msg) {}
};

// Numerical non-convergence (quadrature budget exhausted, root bracketing
// failure). CLI maps these to exit code 3.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace reldiff

#endif
