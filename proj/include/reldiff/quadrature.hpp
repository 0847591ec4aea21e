#ifndef RELDIFF_QUADRATURE_HPP
#define RELDIFF_QUADRATURE_HPP

#include <functional>

#include "reldiff/errors.hpp"

namespace reldiff {

/// Tolerances and budgets for the adaptive integrators.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;        // bisection depth per panel
    int max_intervals = 200000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long n_evals = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Throws convergence_error if the tolerance cannot be met within the budget.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           const QuadratureConfig& cfg = {});

/// Same rule, but [a, b] is pre-split into panels of width at most
/// max_panel_width before adapting. Used for oscillatory integrands where
/// the panel width is tied to the oscillation period.
QuadratureResult integrate_paneled(const std::function<double(double)>& f,
                                   double a, double b,
                                   double max_panel_width,
                                   const QuadratureConfig& cfg = {});

/// Adaptive Simpson with interval doubling, to absolute tolerance tol.
/// Slower than the Gauss-Kronrod path; kept as an algorithmically
/// independent integrator for oracle use.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol, int max_depth = 50);

} // namespace reldiff

#endif
