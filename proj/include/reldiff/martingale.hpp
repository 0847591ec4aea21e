#ifndef RELDIFF_MARTINGALE_HPP
#define RELDIFF_MARTINGALE_HPP

#include "reldiff/model.hpp"

namespace reldiff {

/// Largest admissible martingale exponent, c / sigma^2. The log-volatility
/// bound reads |zeta| <= max_zeta(params), i.e. sigma_S^2 <= c^2 / sigma^2.
double max_zeta(const ModelParams& params);

/// Drift of the exponential martingale,
///   beta = (c^2/sigma^2) [1 - sqrt(1 - zeta^2 sigma^4 / c^2)].
/// Even in zeta, beta(0) = 0, beta(+-max_zeta) = c^2/sigma^2.
/// Throws bound_error when zeta^2 sigma^4 > c^2.
double drift_beta(double zeta, const ModelParams& params);

/// Exponential martingale spec S_t = s0 exp(zeta x - beta t).
struct MartingaleSpec {
    double s0;
    double zeta;
    ModelParams params;
    double beta; // derived

    MartingaleSpec(double s0_, double zeta_, const ModelParams& params_);

    /// Log-volatility sigma_S = zeta * sigma.
    double log_volatility() const { return zeta * params.sigma; }

    /// True when |zeta| sits exactly on the admissibility boundary, where
    /// the pricing integrand loses its exponential decay margin.
    bool at_volatility_bound() const;
};

/// s0 exp(zeta x - beta t). Strictly positive.
double martingale_value(double x, double t, const MartingaleSpec& spec);

/// Oscillatory martingale valid beyond the volatility bound:
///   s0 [a cos(zeta x) + b sin(zeta x)]
///      exp((c^2 t/sigma^2)[sqrt(1 + zeta^2 sigma^4/c^2) - 1]).
/// Not positive-definite; unusable as a stock price, kept for verification.
double tachyonic_martingale_value(double x, double t, double zeta,
                                  double a, double b, double s0,
                                  const ModelParams& params);

} // namespace reldiff

#endif
