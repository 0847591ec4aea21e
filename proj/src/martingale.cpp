#include "reldiff/martingale.hpp"

#include <cmath>
#include <string>

namespace reldiff {

double max_zeta(const ModelParams& params) {
    params.validate();
    return params.lambda();
}

double drift_beta(double zeta, const ModelParams& params) {
    params.validate();
    if (!std::isfinite(zeta))
        throw validation_error("drift_beta: zeta must be finite");
    const double ratio = zeta / params.lambda(); // zeta sigma^2 / c
    const double u = ratio * ratio;
    if (u > 1.0)
        throw bound_error("drift_beta: log-volatility bound violated, |zeta| sigma^2 > c "
                          "(|zeta| = " + std::to_string(std::abs(zeta)) +
                          ", bound = " + std::to_string(params.lambda()) + ")");
    // r0 (1 - sqrt(1-u)) = r0 u / (1 + sqrt(1-u)), stable for small zeta
    return params.r0() * u / (1.0 + std::sqrt(1.0 - u));
}

MartingaleSpec::MartingaleSpec(double s0_, double zeta_, const ModelParams& params_)
    : s0(s0_), zeta(zeta_), params(params_), beta(drift_beta(zeta_, params_)) {
    if (!(s0 > 0.0) || !std::isfinite(s0))
        throw validation_error("MartingaleSpec: s0 must be positive and finite");
}

bool MartingaleSpec::at_volatility_bound() const {
    return std::abs(zeta) == params.lambda();
}

double martingale_value(double x, double t, const MartingaleSpec& spec) {
    return spec.s0 * std::exp(spec.zeta * x - spec.beta * t);
}

double tachyonic_martingale_value(double x, double t, double zeta,
                                  double a, double b, double s0,
                                  const ModelParams& params) {
    params.validate();
    const double ratio = zeta / params.lambda();
    const double u = ratio * ratio;
    // growth exponent r0 (sqrt(1+u) - 1), no bound on zeta here
    const double growth = params.r0() * u / (1.0 + std::sqrt(1.0 + u));
    return s0 * (a * std::cos(zeta * x) + b * std::sin(zeta * x)) * std::exp(growth * t);
}

} // namespace reldiff
