#include "reldiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace reldiff {

namespace {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1]
// (QUADPACK dqk15 tables).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

// One G7/K15 pass over [a, b]; error estimate per QUADPACK.
Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    evals += 15;

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);
    return {a, b, value, err};
}

QuadratureResult adapt(const std::function<double(double)>& f,
                       std::vector<Panel> work, const QuadratureConfig& cfg,
                       long evals) {
    double total = 0.0, total_err = 0.0;
    for (const auto& p : work) {
        total += p.value;
        total_err += p.error;
    }

    int intervals = int(work.size());
    while (true) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= tol) break;
        if (intervals >= cfg.max_intervals)
            throw convergence_error("quadrature: interval budget exhausted");

        // split the worst panel
        auto worst = std::max_element(work.begin(), work.end(),
                                      [](const Panel& l, const Panel& r) {
                                          return l.error < r.error;
                                      });
        const Panel old = *worst;
        const double mid = 0.5 * (old.a + old.b);
        if (mid <= old.a || mid >= old.b)
            throw convergence_error("quadrature: panel width reached machine precision");
        Panel left = gk15(f, old.a, mid, evals);
        Panel right = gk15(f, mid, old.b, evals);
        total += left.value + right.value - old.value;
        total_err += left.error + right.error - old.error;
        *worst = left;
        work.push_back(right);
        ++intervals;
    }
    return {total, total_err, evals};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) { // adapt() requires ascending panels
        QuadratureResult r = integrate(f, b, a, cfg);
        r.value = -r.value;
        return r;
    }
    long evals = 0;
    std::vector<Panel> work{gk15(f, a, b, evals)};
    return adapt(f, std::move(work), cfg, evals);
}

QuadratureResult integrate_paneled(const std::function<double(double)>& f,
                                   double a, double b, double max_panel_width,
                                   const QuadratureConfig& cfg) {
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        QuadratureResult r = integrate_paneled(f, b, a, max_panel_width, cfg);
        r.value = -r.value;
        return r;
    }
    const double width = b - a;
    std::size_t n = 1;
    if (max_panel_width > 0.0 && width > max_panel_width) {
        n = std::size_t(std::ceil(width / max_panel_width));
        n = std::min<std::size_t>(n, std::size_t(cfg.max_intervals) / 2);
    }
    long evals = 0;
    std::vector<Panel> work;
    work.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pa = a + width * double(i) / double(n);
        const double pb = a + width * double(i + 1) / double(n);
        work.push_back(gk15(f, pa, pb, evals));
    }
    return adapt(f, std::move(work), cfg, evals);
}

namespace {

double simpson_step(const std::function<double(double)>& f,
                    double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // roundoff floor: below this the Richardson estimate is pure noise and
    // further bisection cannot improve the panel
    const double eff_tol = std::max(
        tol, std::numeric_limits<double>::epsilon() * std::abs(left + right));
    if (depth >= max_depth) {
        if (std::abs(delta) > 15.0 * eff_tol)
            throw convergence_error("adaptive_simpson: depth budget exhausted");
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * eff_tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

} // namespace reldiff
