#ifndef RELDIFF_PRICING_HPP
#define RELDIFF_PRICING_HPP

#include <vector>

#include "reldiff/density.hpp"
#include "reldiff/martingale.hpp"
#include "reldiff/model.hpp"
#include "reldiff/quadrature.hpp"

namespace reldiff {

enum class OptionKind { call, put };

/// European option terms. Times are absolute: the option runs from
/// valuation_time to maturity.
struct OptionContract {
    double strike;          // S_*
    double maturity;        // T
    double valuation_time;  // t <= T
    double rate;            // r, continuously compounded
    OptionKind kind = OptionKind::call;

    void validate() const;
    double tau() const { return maturity - valuation_time; }
};

struct PriceReport {
    double price = 0.0;
    double x_star = 0.0;              // critical log-strike
    double quad_error_estimate = 0.0;
    double delta = 0.0;               // hedge ratio phi_t
    double bond_units = 0.0;          // psi_t, with B_t = e^{r t}
};

struct SmilePoint {
    double strike;
    double model_price;
    double implied_vol; // NaN when inversion failed
    double delta;
    bool inversion_ok;
};

struct SmileCurve {
    double maturity;
    double forward;
    std::vector<SmilePoint> points;
};

/// Critical log-strike x_* = (1/zeta)[ln(S_*/S_t) + (beta - r)(T - t)].
double critical_log_strike(double s_t, const OptionContract& contract,
                           double zeta, const ModelParams& params);

/// European call under the fat-tailed measure,
///   V = e^{-r tau} S_* \int_{x_*}^inf P(x, tau)(e^{zeta(x - x_*)} - 1) dx.
/// Requires the strict interior 0 < zeta < c/sigma^2: at the boundary the
/// integrand loses its exponential decay and truncation cannot be certified.
/// The report carries the closed-form hedge ratio and bond position.
PriceReport price_call(double s_t, const OptionContract& contract,
                       double zeta, const ModelParams& params,
                       const QuadratureConfig& quad = {});

/// Put by parity: V_p = V_c - S_t + e^{-r tau} S_*.
PriceReport price_put(double s_t, const OptionContract& contract,
                      double zeta, const ModelParams& params,
                      const QuadratureConfig& quad = {});

/// Hedge ratio phi_t = e^{-r tau} (S_*/S_t) \int_{x_*}^inf P(x, tau) e^{zeta(x - x_*)} dx.
double delta_phi(double s_t, const OptionContract& contract,
                 double zeta, const ModelParams& params,
                 const QuadratureConfig& quad = {});

/// Self-financing portfolio (phi, psi): phi units of stock, psi units of the
/// cash bond B_t = e^{r t}, with phi S_t + psi B_t = V_t exactly.
struct HedgePortfolio {
    double phi;
    double psi;
    double value;
};
HedgePortfolio hedge_portfolio(double s_t, const OptionContract& contract,
                               double zeta, const ModelParams& params,
                               const QuadratureConfig& quad = {});

/// Black-Scholes-Merton reference price (lognormal, flat vol).
double bsm_price(double s_t, const OptionContract& contract, double sigma_bsm);

/// Inverts bsm_price for the volatility reproducing target_price.
/// Bracketed bisection refined by secant steps; throws validation_error when
/// the target violates the no-arbitrage band [discounted intrinsic, S_t].
double implied_vol(double target_price, double s_t, const OptionContract& contract);

/// Relativistic call prices and their BSM implied vols across strikes at a
/// fixed maturity. Per-point inversion failures are recorded, not fatal.
SmileCurve smile_curve(double s_t, double maturity, double rate,
                       const std::vector<double>& strikes,
                       double zeta, const ModelParams& params,
                       const QuadratureConfig& quad = {});

} // namespace reldiff

#endif
