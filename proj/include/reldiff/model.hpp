#ifndef RELDIFF_MODEL_HPP
#define RELDIFF_MODEL_HPP

#include <cmath>

#include "reldiff/errors.hpp"

namespace reldiff {

/// Parameters of the relativistic diffusion. With x dimensionless, sigma has
/// units 1/sqrt(time) and c units 1/time. c is the characteristic diffusion
/// speed at which the fat-tail corrections to the Gaussian become important;
/// it is not a speed limit.
struct ModelParams {
    double sigma = 1.0;
    double c = 1.0;

    ModelParams() = default;
    ModelParams(double sigma_, double c_) : sigma(sigma_), c(c_) { validate(); }

    void validate() const {
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw validation_error("ModelParams: sigma must be positive and finite");
        if (!(c > 0.0) || !std::isfinite(c))
            throw validation_error("ModelParams: c must be positive and finite");
    }

    /// Built-in rest rate r0 = c^2 / sigma^2.
    double r0() const { return c * c / (sigma * sigma); }

    /// Exponential tail decay rate of the transition density, c / sigma^2.
    /// Also the largest admissible martingale exponent.
    double lambda() const { return c / (sigma * sigma); }
};

} // namespace reldiff

#endif
