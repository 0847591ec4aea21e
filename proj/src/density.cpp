#include "reldiff/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "reldiff/bessel.hpp"

namespace reldiff {

namespace {

constexpr double kPi = std::numbers::pi;

void check_time(double t, const char* fn) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw validation_error(std::string(fn) +
                               ": t must be positive (the t -> 0 limit is a delta function)");
}

// (c/sigma^2) * (sqrt(x^2 + c^2 t^2) - c t), computed without cancellation.
// This is the decay exponent z - r0 t of the density.
double radial_excess(double x, double t, const ModelParams& p) {
    const double ct = p.c * t;
    const double rho = std::hypot(x, ct);
    return p.lambda() * (x * x) / (rho + ct);
}

} // namespace

void GridSpec::validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw validation_error("GridSpec: requires x_min < x_max, both finite");
    if (n < 2) throw validation_error("GridSpec: requires n >= 2");
}

double log_transition_density(double x, double t, const ModelParams& params) {
    check_time(t, "transition_density");
    params.validate();
    const double ct = params.c * t;
    const double rho = std::hypot(x, ct); // sqrt(x^2 + c^2 t^2)
    const double z = params.lambda() * rho;
    // log P = log(c^2 t / (pi sigma^2)) - log(rho) + log(e^z K1(z)) - (z - r0 t)
    return std::log(params.c * ct / (kPi * params.sigma * params.sigma)) -
           std::log(rho) + std::log(bessel::k1_scaled(z)) - radial_excess(x, t, params);
}

double transition_density(double x, double t, const ModelParams& params) {
    return std::exp(log_transition_density(x, t, params));
}

double gaussian_density(double x, double t, double sigma) {
    if (!(t > 0.0)) throw validation_error("gaussian_density: t must be positive");
    if (!(sigma > 0.0)) throw validation_error("gaussian_density: sigma must be positive");
    const double v = sigma * sigma * t;
    return std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * kPi * v);
}

double so2_density(double x, double t, const ModelParams& params) {
    check_time(t, "so2_density");
    params.validate();
    const double z = params.lambda() * std::hypot(x, params.c * t);
    const double log_p = std::log(params.c / (kPi * params.sigma * params.sigma)) +
                         std::log(bessel::k0_scaled(z)) - z;
    return std::exp(log_p);
}

double characteristic_exponent(double k, const ModelParams& params) {
    params.validate();
    const double s2 = params.sigma * params.sigma;
    const double u = k * k * s2 * s2 / (params.c * params.c);
    // r0 (sqrt(1+u) - 1) = k^2 sigma^2 / (1 + sqrt(1+u)), stable for small k
    return k * k * s2 / (1.0 + std::sqrt(1.0 + u));
}

double fourier_density(double x, double t, const ModelParams& params,
                       const QuadratureConfig& quad) {
    check_time(t, "fourier_density");
    params.validate();
    // Truncate where t psi(k) >= 40: the integrand is below e^{-40}.
    double k_max = 1.0 / (params.sigma * std::sqrt(t));
    while (t * characteristic_exponent(k_max, params) < 40.0) k_max *= 2.0;
    // Oscillation-aware panel width for large |x|.
    const double ax = std::abs(x);
    const double panel = (ax > 0.0) ? kPi / (8.0 * ax) : 0.0;
    const auto integrand = [x, t, &params](double k) {
        return std::cos(k * x) * std::exp(-t * characteristic_exponent(k, params));
    };
    const auto res = integrate_paneled(integrand, 0.0, k_max, panel, quad);
    return res.value / kPi;
}

double tail_approximation(double x, double t, const ModelParams& params) {
    check_time(t, "tail_approximation");
    params.validate();
    const double ct = params.c * t;
    const double u = (x / ct) * (x / ct);
    const double s2t = params.sigma * params.sigma * t;
    // r0 t (sqrt(1+u) - 1) computed as the stable radial excess
    return std::exp(-0.5 * std::log(2.0 * kPi * s2t) - 0.75 * std::log1p(u) -
                    radial_excess(x, t, params));
}

double levy_measure_density(double x, const ModelParams& params) {
    params.validate();
    if (x == 0.0 || !std::isfinite(x))
        throw validation_error("levy_measure_density: x must be nonzero and finite");
    const double ax = std::abs(x);
    const double z = params.lambda() * ax;
    const double log_p = std::log(params.c * params.lambda() / (kPi * ax)) +
                         std::log(bessel::k1_scaled(z)) - z;
    return std::exp(log_p);
}

namespace {

// Half-line truncation point for integrals of f(x) P(x, t): doubles X until
// the integrand envelope is negligible against scale.
double truncation_radius(const std::function<double(double)>& envelope,
                         double start, double scale) {
    double radius = start;
    const double floor = std::max(scale, 1e-30) * 1e-18;
    for (int i = 0; i < 200; ++i) {
        if (envelope(radius) * radius < floor) return radius;
        radius *= 1.6;
    }
    throw convergence_error("density integral: could not find a truncation radius");
}

} // namespace

namespace {

// Shared driver: integrates `integrand` against both tails of the density.
// The interval is pre-split at 0 and at +-bulk so the adaptive rule cannot
// miss a peak much narrower than the truncation radius.
double integrate_density_weighted(const std::function<double(double)>& integrand,
                                  double t, const ModelParams& params,
                                  double growth_rate, double osc_freq,
                                  const QuadratureConfig& quad) {
    if (growth_rate >= params.lambda())
        throw bound_error("expectation: integrand growth rate must stay below c/sigma^2");

    const double bulk = 8.0 * (params.sigma * std::sqrt(t) + params.c * t);
    const double start = bulk + 45.0 / (params.lambda() - growth_rate);
    const double scale =
        std::max({std::abs(integrand(0.0)), std::abs(integrand(0.5 * bulk)),
                  std::abs(integrand(-0.5 * bulk)), 1e-300});
    const auto envelope_pos = [&](double x) { return std::abs(integrand(x)); };
    const auto envelope_neg = [&](double x) { return std::abs(integrand(-x)); };
    const double x_pos = truncation_radius(envelope_pos, start, scale);
    const double x_neg = truncation_radius(envelope_neg, start, scale);

    const double panel = (osc_freq > 0.0) ? kPi / (4.0 * osc_freq) : 0.0;
    QuadratureConfig piece = quad;
    piece.abs_tol = 0.25 * quad.abs_tol;
    piece.rel_tol = 0.25 * quad.rel_tol;

    double total = 0.0;
    const double edges[5] = {-x_neg, -std::min(bulk, x_neg), 0.0,
                             std::min(bulk, x_pos), x_pos};
    for (int i = 0; i < 4; ++i)
        total += integrate_paneled(integrand, edges[i], edges[i + 1], panel, piece).value;
    return total;
}

} // namespace

double expectation(const std::function<double(double)>& f,
                   double t, const ModelParams& params,
                   const QuadratureConfig& quad, double osc_freq,
                   double growth_rate) {
    check_time(t, "expectation");
    params.validate();
    const auto integrand = [&](double x) {
        return f(x) * transition_density(x, t, params);
    };
    return integrate_density_weighted(integrand, t, params, growth_rate, osc_freq, quad);
}

double expectation_log(const std::function<double(double)>& log_f,
                       double growth_rate, double t, const ModelParams& params,
                       const QuadratureConfig& quad) {
    check_time(t, "expectation_log");
    params.validate();
    const auto integrand = [&](double x) {
        return std::exp(log_f(x) + log_transition_density(x, t, params));
    };
    return integrate_density_weighted(integrand, t, params, growth_rate, 0.0, quad);
}

double density_mass(double t, const ModelParams& params, const QuadratureConfig& quad) {
    return expectation([](double) { return 1.0; }, t, params, quad);
}

double density_variance(double t, const ModelParams& params, const QuadratureConfig& quad) {
    QuadratureConfig cfg = quad;
    cfg.abs_tol = std::min(cfg.abs_tol, 1e-9 * params.sigma * params.sigma * t);
    return expectation([](double x) { return x * x; }, t, params, cfg);
}

double convolve_at(const std::function<double(double)>& f1,
                   const std::function<double(double)>& f2,
                   double x, double radius, const QuadratureConfig& quad) {
    const auto integrand = [&](double u) { return f1(x - u) * f2(u); };
    return integrate(integrand, -radius, radius, quad).value;
}

DensityGrid convolve_tabulated(const std::function<double(double)>& f1,
                               const std::function<double(double)>& f2,
                               const GridSpec& grid, double max_tail_mass) {
    grid.validate();
    const std::size_t n = grid.n;
    const double h = grid.spacing();

    std::vector<double> x(n), p1(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = grid.x_min + h * double(i);
        p1[i] = f1(x[i]);
        p2[i] = f2(x[i]);
    }

    // Estimate the truncated tail mass from the endpoint decay rate; for
    // exponentially decaying factors mass beyond the edge is ~ p(edge)/rate.
    const auto tail_estimate = [&](const std::vector<double>& p) {
        double est = 0.0;
        for (int side = 0; side < 2; ++side) {
            const double pe = side ? p[n - 1] : p[0];
            const double pin = side ? p[n - 2] : p[1];
            if (pe <= 0.0) continue;
            const double rate = std::log(pin / pe) / h;
            est += (rate > 0.0) ? pe / rate : std::numeric_limits<double>::infinity();
        }
        return est;
    };
    if (tail_estimate(p1) > max_tail_mass || tail_estimate(p2) > max_tail_mass)
        throw validation_error("convolve: grid truncates more tail mass than allowed; widen it");

    // Trapezoidal convolution; the off-grid factor is re-evaluated directly.
    DensityGrid out;
    out.x_values = x;
    out.p_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            acc += w * f1(x[i] - x[j]) * p2[j];
        }
        out.p_values[i] = acc * h;
    }
    return out;
}

DensityGrid convolve_densities(double t1, double t2, const ModelParams& params,
                               const GridSpec& grid, double max_tail_mass) {
    check_time(t1, "convolve_densities");
    check_time(t2, "convolve_densities");
    auto out = convolve_tabulated(
        [&](double x) { return transition_density(x, t1, params); },
        [&](double x) { return transition_density(x, t2, params); },
        grid, max_tail_mass);
    out.t = t1 + t2;
    out.params = params;
    return out;
}

DensityGrid tabulate_density(double t, const ModelParams& params, const GridSpec& grid) {
    check_time(t, "tabulate_density");
    grid.validate();
    DensityGrid out;
    out.t = t;
    out.params = params;
    const double h = grid.spacing();
    out.x_values.resize(grid.n);
    out.p_values.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        out.x_values[i] = grid.x_min + h * double(i);
        out.p_values[i] = transition_density(out.x_values[i], t, params);
    }
    return out;
}

} // namespace reldiff
