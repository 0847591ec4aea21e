#ifndef RELDIFF_DENSITY_HPP
#define RELDIFF_DENSITY_HPP

#include <functional>
#include <vector>

#include "reldiff/model.hpp"
#include "reldiff/quadrature.hpp"

namespace reldiff {

/// Tabulated density on a strictly increasing x grid.
struct DensityGrid {
    std::vector<double> x_values;
    std::vector<double> p_values;
    double t = 0.0;
    ModelParams params;
};

/// Uniform grid specification for tabulation and convolution.
struct GridSpec {
    double x_min;
    double x_max;
    std::size_t n; // number of points, >= 2

    void validate() const;
    double spacing() const { return (x_max - x_min) / double(n - 1); }
};

/// The fat-tailed transition density
///   P(x, t) = (c / pi sigma^2) (ct / sqrt(x^2 + c^2 t^2))
///             K_1((c/sigma^2) sqrt(x^2 + c^2 t^2)) exp(c^2 t / sigma^2).
/// Normalized to 1, symmetric in x, obeys the semigroup (tower) law.
/// Throws validation_error for t <= 0; the t -> 0 limit is a delta function
/// and has no pointwise value.
double transition_density(double x, double t, const ModelParams& params);

/// log of the above, safe deep into both tails and for large c^2 t / sigma^2.
double log_transition_density(double x, double t, const ModelParams& params);

/// Gaussian reference density (2 pi sigma^2 t)^{-1/2} exp(-x^2 / 2 sigma^2 t).
double gaussian_density(double x, double t, double sigma);

/// The SO(2)-invariant density (c / pi sigma^2) K_0((c/sigma^2) sqrt(x^2 + c^2 t^2)).
/// Not a probability density: its x-integral is exp(-r0 t), and it violates
/// the semigroup law.
double so2_density(double x, double t, const ModelParams& params);

/// Characteristic (Levy) exponent psi(k) = (c^2/sigma^2)(sqrt(1 + k^2 sigma^4 / c^2) - 1).
/// Even, nonnegative, psi(0) = 0, psi''(0) = sigma^2.
double characteristic_exponent(double k, const ModelParams& params);

/// Fourier-inversion evaluation of the transition density,
///   (1/pi) \int_0^Kmax cos(kx) exp(-t psi(k)) dk,
/// with Kmax chosen so t psi(Kmax) >= 40 and oscillation-aware panels for
/// large |x|. Cross-check oracle for transition_density.
double fourier_density(double x, double t, const ModelParams& params,
                       const QuadratureConfig& quad = {});

/// Large-argument approximation
///   (2 pi sigma^2 t)^{-1/2} [1 + x^2/c^2t^2]^{-3/4}
///     exp(-(c^2 t/sigma^2)[sqrt(1 + x^2/c^2t^2) - 1]).
/// Equals the Gaussian at x = 0 and tracks transition_density to ~2% once
/// (c/sigma^2) sqrt(x^2 + c^2 t^2) >= 20.
double tail_approximation(double x, double t, const ModelParams& params);

/// Levy (jump intensity) measure density, the small-t limit of
/// t^{-1} P(x, t): (c^2 / pi sigma^2 |x|) K_1(c|x| / sigma^2).
/// Second moment integrates to sigma^2. Throws validation_error at x = 0.
double levy_measure_density(double x, const ModelParams& params);

/// Pointwise numerical convolution \int f1(x - u) f2(u) du by adaptive
/// quadrature over [-radius, radius].
double convolve_at(const std::function<double(double)>& f1,
                   const std::function<double(double)>& f2,
                   double x, double radius,
                   const QuadratureConfig& quad = {});

/// Trapezoidal convolution of the transition density with itself,
/// tabulated on the grid: result(x_i) = h sum_j P(x_i - u_j, t1) P(u_j, t2).
/// Throws validation_error if the grid truncates more than max_tail_mass
/// of either factor (estimated from the endpoint decay rate).
DensityGrid convolve_densities(double t1, double t2, const ModelParams& params,
                               const GridSpec& grid, double max_tail_mass = 1e-10);

/// Same trapezoidal machinery for arbitrary tabulated factors.
DensityGrid convolve_tabulated(const std::function<double(double)>& f1,
                               const std::function<double(double)>& f2,
                               const GridSpec& grid, double max_tail_mass = 1e-10);

/// Tabulate the transition density on a grid.
DensityGrid tabulate_density(double t, const ModelParams& params, const GridSpec& grid);

/// \int f(x) P(x, t) dx over the whole line, with tail truncation chosen
/// from the density's exponential decay. osc_freq > 0 caps panel widths at
/// a fraction of the oscillation period of f.
double expectation(const std::function<double(double)>& f,
                   double t, const ModelParams& params,
                   const QuadratureConfig& quad = {},
                   double osc_freq = 0.0,
                   double growth_rate = 0.0);

/// \int exp(log_f(x)) P(x, t) dx with the product formed in log space, for
/// integrands growing like exp(growth_rate |x|) that would overflow when
/// evaluated on their own (exponential martingales, option payoffs).
/// Requires growth_rate < c/sigma^2.
double expectation_log(const std::function<double(double)>& log_f,
                       double growth_rate, double t, const ModelParams& params,
                       const QuadratureConfig& quad = {});

/// Total mass \int P(x, t) dx (should be 1) and variance \int x^2 P dx.
double density_mass(double t, const ModelParams& params, const QuadratureConfig& quad = {});
double density_variance(double t, const ModelParams& params, const QuadratureConfig& quad = {});

} // namespace reldiff

#endif
