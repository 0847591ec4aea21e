#ifndef RELDIFF_BESSEL_HPP
#define RELDIFF_BESSEL_HPP

namespace reldiff {
namespace bessel {

/// Value of K_nu at a point together with its exponentially scaled variant
/// e^x K_nu(x). The density evaluates everything through the scaled form so
/// the scaled_value is the primary quantity for large arguments, where the
/// plain value underflows.
struct BesselResult {
    double value;         // K_nu(x); 0.0 once e^{-x} underflows
    double scaled_value;  // e^x K_nu(x)
    double argument;      // x
};

/// Modified Bessel function of the second kind, order zero.
/// Throws validation_error for x <= 0 or non-finite x.
double k0(double x);

/// Order one. Satisfies K_1(x) = -K_0'(x).
double k1(double x);

/// Exponentially scaled variants e^x K_nu(x), finite for all x > 0.
double k0_scaled(double x);
double k1_scaled(double x);

BesselResult k0_full(double x);
BesselResult k1_full(double x);

/// Test oracle: evaluates the integral representation
///   K_alpha(x) = \int_0^inf exp(-x cosh(xi)) cosh(alpha xi) dxi
/// by adaptive Simpson quadrature to absolute tolerance tol. Slow by
/// construction; never used in hot paths.
double k_oracle(double alpha, double x, double tol);

} // namespace bessel
} // namespace reldiff

#endif
