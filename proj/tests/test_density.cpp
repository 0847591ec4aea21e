#include <doctest.h>

#include <cmath>
#include <vector>

#include "reldiff/density.hpp"

using namespace reldiff;

namespace {

constexpr double kSigmas[] = {0.2, 1.0, 3.0};
constexpr double kCs[] = {0.1, 1.0, 10.0};
constexpr double kTs[] = {0.1, 1.0, 5.0};

} // namespace

TEST_CASE("closed-form value at the origin") {
    // (1/pi) K1(1) e at sigma = c = t = 1
    const ModelParams p(1.0, 1.0);
    CHECK(transition_density(0.0, 1.0, p) == doctest::Approx(0.5208038).epsilon(1e-6));
}

TEST_CASE("symmetry and positivity") {
    const ModelParams p(0.7, 2.3);
    for (double x : {0.0, 0.17, 1.0, 4.5, 30.0}) {
        const double plus = transition_density(x, 0.8, p);
        const double minus = transition_density(-x, 0.8, p);
        CHECK(plus == minus); // exact, the formula sees only x^2
        CHECK(plus > 0.0);
    }
}

TEST_CASE("t <= 0 rejected") {
    const ModelParams p(1.0, 1.0);
    CHECK_THROWS_AS(transition_density(0.0, 0.0, p), validation_error);
    CHECK_THROWS_AS(transition_density(0.0, -1.0, p), validation_error);
    CHECK_THROWS_AS(so2_density(0.0, 0.0, p), validation_error);
    CHECK_THROWS_AS(tail_approximation(0.0, 0.0, p), validation_error);
    CHECK_THROWS_AS(gaussian_density(0.0, 0.0, 1.0), validation_error);
}

TEST_CASE("normalization over the parameter lattice") {
    for (double sigma : kSigmas)
        for (double c : kCs)
            for (double t : kTs) {
                const ModelParams p(sigma, c);
                CHECK(density_mass(t, p) == doctest::Approx(1.0).epsilon(1e-8));
            }
}

TEST_CASE("variance equals sigma^2 t over the parameter lattice") {
    for (double sigma : kSigmas)
        for (double c : kCs)
            for (double t : kTs) {
                const ModelParams p(sigma, c);
                CHECK(density_variance(t, p) ==
                      doctest::Approx(sigma * sigma * t).epsilon(1e-6));
            }
}

TEST_CASE("gaussian reference density") {
    CHECK(gaussian_density(0.0, 1.0, 1.0) == doctest::Approx(0.3989423).epsilon(1e-6));
    const double peak = gaussian_density(0.0, 2.0, 0.7);
    CHECK(gaussian_density(0.7 * std::sqrt(2.0), 2.0, 0.7) ==
          doctest::Approx(peak * std::exp(-0.5)).epsilon(1e-12));
    const auto r = integrate([](double x) { return gaussian_density(x, 1.0, 1.0); },
                             -10.0, 10.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gaussian limit at large c") {
    const ModelParams p(1.0, 100.0);
    CHECK(transition_density(3.0, 1.0, p) ==
          doctest::Approx(gaussian_density(3.0, 1.0, 1.0)).epsilon(1e-3));
}

TEST_CASE("gaussian limit error decreases along c in {10, 100, 1000}") {
    double prev = 1e300;
    for (double c : {10.0, 100.0, 1000.0}) {
        const ModelParams p(1.0, c);
        double worst = 0.0;
        for (double x = -3.0; x <= 3.0; x += 0.25)
            worst = std::max(worst, std::abs(transition_density(x, 1.0, p) -
                                             gaussian_density(x, 1.0, 1.0)));
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("SO(2) density: value, mass deficit, radial symmetry") {
    const ModelParams p(1.0, 1.0);
    CHECK(so2_density(0.0, 1.0, p) == doctest::Approx(0.1340154).epsilon(1e-6));
    // integral over x equals e^{-r0 t}, not 1
    const auto r = integrate([&](double x) { return so2_density(x, 1.0, p); },
                             -60.0, 60.0, {1e-12, 1e-12, 60, 200000});
    CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    // depends on x and ct only through the radius
    CHECK(so2_density(0.3, 1.7, p) ==
          doctest::Approx(so2_density(1.7, 0.3, p)).epsilon(1e-14));
}

TEST_CASE("characteristic exponent values and limits") {
    const ModelParams p(1.0, 1.0);
    CHECK(characteristic_exponent(0.0, p) == 0.0);
    CHECK(characteristic_exponent(1.0, p) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    CHECK(characteristic_exponent(-1.0, p) ==
          doctest::Approx(characteristic_exponent(1.0, p)).epsilon(1e-15));
    const ModelParams fast(1.0, 1000.0);
    CHECK(characteristic_exponent(1.0, fast) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(characteristic_exponent(3.0, p) >= 0.0);
}

TEST_CASE("Fourier inversion agrees with the closed form") {
    const ModelParams p(1.0, 1.0);
    CHECK(fourier_density(0.0, 1.0, p) == doctest::Approx(0.5208038).epsilon(1e-6));
    CHECK(std::abs(fourier_density(0.0, 1.0, p) - transition_density(0.0, 1.0, p)) <=
          1e-8);
    const ModelParams fast(1.0, 1000.0);
    CHECK(fourier_density(0.0, 1.0, fast) == doctest::Approx(0.3989).epsilon(1e-3));
}

TEST_CASE("Fourier inversion on a 41-point grid over the lattice") {
    // full 27-point lattice is exercised by the acceptance suite; a spread of
    // regimes here keeps the unit run fast
    for (auto [sigma, c, t] : {std::tuple{1.0, 1.0, 1.0},
                               std::tuple{0.2, 10.0, 0.1},
                               std::tuple{3.0, 0.1, 5.0}}) {
        const ModelParams p(sigma, c);
        const double w = 4.0 * (sigma * std::sqrt(t) + c * t);
        for (int i = 0; i <= 40; ++i) {
            const double x = -w + 2.0 * w * double(i) / 40.0;
            CHECK(std::abs(fourier_density(x, t, p) - transition_density(x, t, p)) <=
                  1e-8);
            CHECK(fourier_density(x, t, p) >= -1e-10);
        }
    }
}

TEST_CASE("fat-tail approximation: origin value and quoted point") {
    const ModelParams p(1.0, 1.0);
    CHECK(tail_approximation(0.0, 1.0, p) ==
          doctest::Approx(gaussian_density(0.0, 1.0, 1.0)).epsilon(1e-14));
    const double quoted = std::pow(2.0 * 3.141592653589793, -0.5) *
                          std::pow(2.0, -0.75) * std::exp(-(std::sqrt(2.0) - 1.0));
    CHECK(tail_approximation(1.0, 1.0, p) == doctest::Approx(quoted).epsilon(1e-12));
    CHECK(tail_approximation(1.0, 1.0, p) == doctest::Approx(0.1567).epsilon(1e-3));
}

TEST_CASE("fat-tail ratio within 2% once the radial argument reaches 20") {
    for (auto [sigma, c] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
        const ModelParams p(sigma, c);
        const double t = 1.0;
        for (double z = 20.0; z <= 400.0; z *= 1.7) {
            const double radius = z / p.lambda();
            if (radius <= c * t) continue;
            const double x = std::sqrt(radius * radius - c * c * t * t);
            const double ratio = transition_density(x, t, p) / tail_approximation(x, t, p);
            CHECK(ratio > 0.98);
            CHECK(ratio < 1.02);
        }
    }
}

TEST_CASE("Levy measure: values, symmetry, second moment, small-t limit") {
    const ModelParams p(1.0, 1.0);
    CHECK(levy_measure_density(1.0, p) == doctest::Approx(0.1915930).epsilon(1e-6));
    CHECK(levy_measure_density(-1.0, p) == levy_measure_density(1.0, p));
    CHECK_THROWS_AS(levy_measure_density(0.0, p), validation_error);

    // second moment integrates to sigma^2; x^2 tames the 1/|x| singularity
    const auto second = integrate(
        [&](double x) { return x == 0.0 ? 0.0 : x * x * levy_measure_density(x, p); },
        -60.0, 60.0, {1e-12, 1e-12, 60, 200000});
    CHECK(second.value == doctest::Approx(1.0).epsilon(1e-6));

    // t^{-1} P(x, t) approaches the measure monotonically in error
    double prev = 1e300;
    for (double t : {1e-2, 1e-3, 1e-4}) {
        const double err =
            std::abs(transition_density(1.0, t, p) / t - levy_measure_density(1.0, p));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("semigroup: half-step self-convolution reproduces the full step") {
    for (auto [sigma, c] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.2}}) {
        const ModelParams p(sigma, c);
        for (auto [t1, t2] : {std::pair{0.5, 0.5}, std::pair{0.25, 0.75},
                              std::pair{0.1, 0.9}}) {
            const auto f1 = [&, t1 = t1](double u) { return transition_density(u, t1, p); };
            const auto f2 = [&, t2 = t2](double u) { return transition_density(u, t2, p); };
            const double radius = 40.0 * sigma + 40.0 * c;
            for (double x : {0.0, 1.0, 2.5}) {
                const double conv = convolve_at(f1, f2, x, radius);
                CHECK(std::abs(conv - transition_density(x, 1.0, p)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("the SO(2) density fails the semigroup test") {
    const ModelParams p(1.0, 1.0);
    const auto half = [&](double u) { return so2_density(u, 0.5, p); };
    double worst = 0.0;
    for (double x : {0.0, 0.5, 1.0, 2.0})
        worst = std::max(worst,
                         std::abs(convolve_at(half, half, x, 60.0) -
                                  so2_density(x, 1.0, p)));
    CHECK(worst > 1e-3);
}

TEST_CASE("grid convolution: Gaussian halves recombine exactly") {
    GridSpec grid{-12.0, 12.0, 2401};
    const auto g_half = [](double u) { return gaussian_density(u, 0.5, 1.0); };
    const DensityGrid conv = convolve_tabulated(g_half, g_half, grid);
    for (std::size_t i = 0; i < conv.x_values.size(); ++i) {
        if (std::abs(conv.x_values[i]) > 6.0) continue;
        CHECK(std::abs(conv.p_values[i] - gaussian_density(conv.x_values[i], 1.0, 1.0)) <=
              1e-8);
    }
}

TEST_CASE("grid convolution of the transition density") {
    const ModelParams p(1.0, 1.0);
    GridSpec grid{-40.0, 40.0, 8001};
    const DensityGrid conv = convolve_densities(0.5, 0.5, p, grid);
    for (std::size_t i = 0; i < conv.x_values.size(); ++i) {
        const double x = conv.x_values[i];
        if (std::abs(x) > 8.0) continue;
        CHECK(std::abs(conv.p_values[i] - transition_density(x, 1.0, p)) <= 1e-6);
    }
}

TEST_CASE("grid convolution rejects grids that truncate tail mass") {
    const ModelParams p(1.0, 1.0);
    GridSpec narrow{-2.0, 2.0, 101};
    CHECK_THROWS_AS(convolve_densities(0.5, 0.5, p, narrow), validation_error);
}

TEST_CASE("delta limit: expectation of cos approaches 1 as t shrinks") {
    const ModelParams p(1.0, 1.0);
    double prev_err = 1e300;
    for (double t : {1.0, 0.1, 0.01}) {
        const double mean = expectation([](double x) { return std::cos(x); }, t, p,
                                        {}, 1.0);
        const double err = std::abs(mean - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-2);
}

TEST_CASE("tabulated grid carries its metadata") {
    const ModelParams p(0.5, 2.0);
    GridSpec grid{-1.0, 1.0, 5};
    const DensityGrid table = tabulate_density(0.3, p, grid);
    REQUIRE(table.x_values.size() == 5);
    CHECK(table.t == 0.3);
    CHECK(table.x_values.front() == -1.0);
    CHECK(table.x_values.back() == 1.0);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(table.p_values[i] ==
              doctest::Approx(transition_density(table.x_values[i], 0.3, p)));
}
