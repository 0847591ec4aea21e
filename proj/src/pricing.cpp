#include "reldiff/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace reldiff {

namespace {

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

void check_spot(double s_t, const char* fn) {
    if (!(s_t > 0.0) || !std::isfinite(s_t))
        throw validation_error(std::string(fn) + ": spot must be positive and finite");
}

void check_pricing_zeta(double zeta, const ModelParams& params) {
    if (!(zeta > 0.0))
        throw validation_error("pricing: zeta must be positive");
    if (zeta >= params.lambda())
        throw bound_error("pricing: zeta must lie strictly below the log-volatility bound "
                          "c/sigma^2 = " + std::to_string(params.lambda()) +
                          "; at the bound the pricing integrand loses its exponential decay");
}

struct CallIntegrals {
    double price_integral;  // int P(x,tau) (e^{zeta(x-x*)} - 1) dx over (x*, inf)
    double delta_integral;  // int P(x,tau) e^{zeta(x-x*)} dx over (x*, inf)
    double error_estimate;
};

// Both pricing integrals share the same truncation and panel layout. The
// integrands are formed in log space: deep in the tail both exp(log P) and
// e^{zeta(x - x*)} leave the double range even though their product does not.
CallIntegrals call_integrals(double x_star, double tau, double zeta,
                             const ModelParams& params, const QuadratureConfig& quad) {
    const auto log_weight = [&](double x) {
        return log_transition_density(x, tau, params) + zeta * (x - x_star);
    };
    const auto delta_integrand = [&](double x) { return std::exp(log_weight(x)); };
    const auto price_integrand = [&](double x) {
        const double d = zeta * (x - x_star);
        if (d >= 30.0) return std::exp(log_weight(x)); // expm1(d) == e^d here
        return transition_density(x, tau, params) * std::expm1(d);
    };

    // Truncation: the weighted tail decays like e^{-(lambda - zeta) x} x^{-3/2}.
    const double margin = params.lambda() - zeta;
    const double bulk = 8.0 * (params.sigma * std::sqrt(tau) + params.c * tau);
    double x_max = std::max(x_star, 0.0) + bulk + 45.0 / margin;
    double scale = std::max({delta_integrand(std::max(x_star, 0.0) + 0.5 * bulk),
                             delta_integrand(std::max(x_star, 0.0)), 1e-300});
    for (int i = 0; i < 200 && delta_integrand(x_max) * x_max > scale * 1e-16; ++i)
        x_max *= 1.6;

    // Pre-split at the bulk landmarks inside [x*, x_max].
    std::vector<double> edges{x_star};
    for (double e : {-bulk, 0.0, bulk, std::max(x_star, 0.0) + bulk})
        if (e > x_star && e < x_max) edges.push_back(e);
    edges.push_back(x_max);
    std::sort(edges.begin(), edges.end());

    QuadratureConfig piece = quad;
    piece.abs_tol = quad.abs_tol / double(edges.size());
    piece.rel_tol = quad.rel_tol / double(edges.size());

    CallIntegrals out{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto rp = integrate(price_integrand, edges[i], edges[i + 1], piece);
        const auto rd = integrate(delta_integrand, edges[i], edges[i + 1], piece);
        out.price_integral += rp.value;
        out.delta_integral += rd.value;
        out.error_estimate += rp.error_estimate;
    }
    return out;
}

PriceReport terminal_report(double s_t, const OptionContract& contract) {
    // tau = 0: terminal payoff, delta is the payoff indicator.
    PriceReport rep;
    const double intrinsic_call = std::max(s_t - contract.strike, 0.0);
    const bool call = contract.kind == OptionKind::call;
    rep.price = call ? intrinsic_call : std::max(contract.strike - s_t, 0.0);
    rep.x_star = 0.0;
    rep.quad_error_estimate = 0.0;
    if (call)
        rep.delta = (s_t > contract.strike) ? 1.0 : 0.0;
    else
        rep.delta = (s_t < contract.strike) ? -1.0 : 0.0;
    const double bond = std::exp(contract.rate * contract.valuation_time);
    rep.bond_units = (rep.price - rep.delta * s_t) / bond;
    return rep;
}

} // namespace

void OptionContract::validate() const {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw validation_error("OptionContract: strike must be positive and finite");
    if (!(maturity >= valuation_time))
        throw validation_error("OptionContract: maturity must not precede valuation time");
    if (!std::isfinite(rate) || !std::isfinite(maturity) || !std::isfinite(valuation_time))
        throw validation_error("OptionContract: times and rate must be finite");
}

double critical_log_strike(double s_t, const OptionContract& contract,
                           double zeta, const ModelParams& params) {
    contract.validate();
    check_spot(s_t, "critical_log_strike");
    if (!(zeta > 0.0))
        throw validation_error("critical_log_strike: zeta must be positive");
    const double beta = drift_beta(zeta, params);
    return (std::log(contract.strike / s_t) +
            (beta - contract.rate) * contract.tau()) / zeta;
}

PriceReport price_call(double s_t, const OptionContract& contract,
                       double zeta, const ModelParams& params,
                       const QuadratureConfig& quad) {
    contract.validate();
    check_spot(s_t, "price_call");
    params.validate();
    if (contract.tau() == 0.0) {
        OptionContract c = contract;
        c.kind = OptionKind::call;
        return terminal_report(s_t, c);
    }
    check_pricing_zeta(zeta, params);

    const double tau = contract.tau();
    const double x_star = critical_log_strike(s_t, contract, zeta, params);
    const double discount = std::exp(-contract.rate * tau);
    const auto ints = call_integrals(x_star, tau, zeta, params, quad);

    PriceReport rep;
    rep.x_star = x_star;
    rep.price = discount * contract.strike * ints.price_integral;
    rep.quad_error_estimate = discount * contract.strike * ints.error_estimate;
    rep.delta = discount * (contract.strike / s_t) * ints.delta_integral;
    const double bond = std::exp(contract.rate * contract.valuation_time);
    rep.bond_units = (rep.price - rep.delta * s_t) / bond;
    return rep;
}

PriceReport price_put(double s_t, const OptionContract& contract,
                      double zeta, const ModelParams& params,
                      const QuadratureConfig& quad) {
    contract.validate();
    if (contract.tau() == 0.0) {
        OptionContract c = contract;
        c.kind = OptionKind::put;
        return terminal_report(s_t, c);
    }
    PriceReport rep = price_call(s_t, contract, zeta, params, quad);
    const double discount = std::exp(-contract.rate * contract.tau());
    rep.price = rep.price - s_t + discount * contract.strike;
    rep.delta -= 1.0; // put delta by parity
    const double bond = std::exp(contract.rate * contract.valuation_time);
    rep.bond_units = (rep.price - rep.delta * s_t) / bond;
    return rep;
}

double delta_phi(double s_t, const OptionContract& contract,
                 double zeta, const ModelParams& params,
                 const QuadratureConfig& quad) {
    return price_call(s_t, contract, zeta, params, quad).delta;
}

HedgePortfolio hedge_portfolio(double s_t, const OptionContract& contract,
                               double zeta, const ModelParams& params,
                               const QuadratureConfig& quad) {
    const PriceReport rep = (contract.kind == OptionKind::call)
                                ? price_call(s_t, contract, zeta, params, quad)
                                : price_put(s_t, contract, zeta, params, quad);
    return {rep.delta, rep.bond_units, rep.price};
}

double bsm_price(double s_t, const OptionContract& contract, double sigma_bsm) {
    contract.validate();
    check_spot(s_t, "bsm_price");
    if (!(sigma_bsm > 0.0) || !std::isfinite(sigma_bsm))
        throw validation_error("bsm_price: sigma must be positive and finite");
    const double tau = contract.tau();
    const double df = std::exp(-contract.rate * tau);
    const bool call = contract.kind == OptionKind::call;
    const double stdev = sigma_bsm * std::sqrt(tau);
    if (stdev < 1e-12) {
        const double fwd_intrinsic = s_t - df * contract.strike;
        return call ? std::max(fwd_intrinsic, 0.0) : std::max(-fwd_intrinsic, 0.0);
    }
    const double d1 = (std::log(s_t / contract.strike) +
                       (contract.rate + 0.5 * sigma_bsm * sigma_bsm) * tau) / stdev;
    const double d2 = d1 - stdev;
    if (call)
        return s_t * norm_cdf(d1) - df * contract.strike * norm_cdf(d2);
    return df * contract.strike * norm_cdf(-d2) - s_t * norm_cdf(-d1);
}

double implied_vol(double target_price, double s_t, const OptionContract& contract) {
    contract.validate();
    check_spot(s_t, "implied_vol");
    const double tau = contract.tau();
    const double df = std::exp(-contract.rate * tau);
    const bool call = contract.kind == OptionKind::call;
    const double intrinsic = call ? std::max(s_t - df * contract.strike, 0.0)
                                  : std::max(df * contract.strike - s_t, 0.0);
    const double upper = call ? s_t : df * contract.strike;
    const double tol = 1e-10 * s_t;
    if (target_price < intrinsic - tol || target_price > upper + tol)
        throw validation_error("implied_vol: target price outside the no-arbitrage band");
    if (target_price <= intrinsic + tol) return 0.0;
    if (tau == 0.0)
        throw validation_error("implied_vol: no volatility dependence at expiry");

    const auto f = [&](double vol) { return bsm_price(s_t, contract, vol) - target_price; };
    double lo = 1e-9, hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 64.0)
            throw convergence_error("implied_vol: failed to bracket the root");
    }

    double flo = f(lo), fhi = f(hi);
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        // secant proposal, fall back to bisection when it leaves the bracket
        double cand = hi - fhi * (hi - lo) / (fhi - flo);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        const double fc = f(cand);
        if (std::abs(fc) <= tol || hi - lo < 1e-14) return cand;
        if (fc < 0.0) {
            lo = cand;
            flo = fc;
        } else {
            hi = cand;
            fhi = fc;
        }
        mid = 0.5 * (lo + hi);
    }
    (void)mid;
    throw convergence_error("implied_vol: iteration cap reached");
}

SmileCurve smile_curve(double s_t, double maturity, double rate,
                       const std::vector<double>& strikes,
                       double zeta, const ModelParams& params,
                       const QuadratureConfig& quad) {
    check_spot(s_t, "smile_curve");
    if (strikes.empty())
        throw validation_error("smile_curve: at least one strike required");
    if (!std::is_sorted(strikes.begin(), strikes.end(),
                        [](double a, double b) { return a <= b; }))
        throw validation_error("smile_curve: strikes must be strictly increasing");
    if (strikes.front() <= 0.0)
        throw validation_error("smile_curve: strikes must be positive");

    SmileCurve curve;
    curve.maturity = maturity;
    curve.forward = s_t * std::exp(rate * maturity);
    curve.points.reserve(strikes.size());
    for (double k : strikes) {
        OptionContract contract{k, maturity, 0.0, rate, OptionKind::call};
        const PriceReport rep = price_call(s_t, contract, zeta, params, quad);
        SmilePoint pt{k, rep.price, std::numeric_limits<double>::quiet_NaN(),
                      rep.delta, false};
        try {
            pt.implied_vol = implied_vol(rep.price, s_t, contract);
            pt.inversion_ok = true;
        } catch (const std::exception&) {
            // recorded as a failed point, not fatal
        }
        curve.points.push_back(pt);
    }
    return curve;
}

} // namespace reldiff
