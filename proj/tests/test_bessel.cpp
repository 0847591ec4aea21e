#include <doctest.h>

#include <cmath>
#include <limits>

#include "reldiff/bessel.hpp"
#include "reldiff/errors.hpp"

using namespace reldiff;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("K0 and K1 reference values") {
    CHECK(bessel::k0(1.0) == doctest::Approx(0.4210244382).epsilon(1e-9));
    CHECK(bessel::k0(0.5) == doctest::Approx(0.9244190712).epsilon(1e-9));
    CHECK(bessel::k1(1.0) == doctest::Approx(0.6019072302).epsilon(1e-9));
}

TEST_CASE("small-argument limit of K1 is 1/x") {
    CHECK(bessel::k1(0.01) == doctest::Approx(100.0).epsilon(1e-3));
}

TEST_CASE("large-argument asymptotics sqrt(pi/2x) e^{-x}") {
    const double asym50 = std::sqrt(kPi / 100.0) * std::exp(-50.0);
    CHECK(bessel::k0(50.0) == doctest::Approx(asym50).epsilon(0.01));
    CHECK(bessel::k1(50.0) == doctest::Approx(asym50).epsilon(0.01));
    const double asym30 = std::sqrt(kPi / 60.0) * std::exp(-30.0);
    CHECK(bessel::k_oracle(1.0, 30.0, 1e-12) == doctest::Approx(asym30).epsilon(0.02));
}

TEST_CASE("oracle agreement on 100 log-spaced points in [1e-3, 50]") {
    for (int i = 0; i < 100; ++i) {
        const double lx = std::log(1e-3) +
                          (std::log(50.0) - std::log(1e-3)) * double(i) / 99.0;
        const double x = std::exp(lx);
        const double o0 = bessel::k_oracle(0.0, x, 1e-12 * std::max(1.0, bessel::k0(x)));
        const double o1 = bessel::k_oracle(1.0, x, 1e-12 * std::max(1.0, bessel::k1(x)));
        CHECK(bessel::k0(x) == doctest::Approx(o0).epsilon(1e-10));
        CHECK(bessel::k1(x) == doctest::Approx(o1).epsilon(1e-10));
    }
}

TEST_CASE("oracle matches itself at the quoted values") {
    CHECK(bessel::k_oracle(0.0, 1.0, 1e-12) == doctest::Approx(0.4210244382).epsilon(1e-9));
    CHECK(bessel::k_oracle(1.0, 1.0, 1e-12) == doctest::Approx(0.6019072302).epsilon(1e-9));
}

TEST_CASE("derivative identity K1 = -K0'") {
    for (double x : {0.1, 0.3, 1.0, 2.5, 7.0, 20.0}) {
        const double h = 1e-5 * std::max(x, 1.0);
        const double fd = (bessel::k0(x + h) - bessel::k0(x - h)) / (2.0 * h);
        CHECK(-fd == doctest::Approx(bessel::k1(x)).epsilon(1e-6));
    }
}

TEST_CASE("monotone decreasing and positive") {
    double prev0 = bessel::k0(0.05), prev1 = bessel::k1(0.05);
    for (double x = 0.1; x <= 30.0; x += 0.35) {
        const double v0 = bessel::k0(x), v1 = bessel::k1(x);
        CHECK(v0 > 0.0);
        CHECK(v1 > 0.0);
        CHECK(v0 < prev0);
        CHECK(v1 < prev1);
        prev0 = v0;
        prev1 = v1;
    }
}

TEST_CASE("scaled variants carry the exp(x) factor") {
    for (double x : {0.2, 1.0, 5.0, 40.0, 300.0}) {
        if (x < 700.0) {
            CHECK(bessel::k0_scaled(x) * std::exp(-x) ==
                  doctest::Approx(bessel::k0(x)).epsilon(1e-12));
            CHECK(bessel::k1_scaled(x) * std::exp(-x) ==
                  doctest::Approx(bessel::k1(x)).epsilon(1e-12));
        }
        const auto r0 = bessel::k0_full(x);
        CHECK(r0.argument == x);
        CHECK(r0.scaled_value == doctest::Approx(bessel::k0_scaled(x)));
        const auto r1 = bessel::k1_full(x);
        CHECK(r1.scaled_value == doctest::Approx(bessel::k1_scaled(x)));
    }
    // scaled form stays finite far past the overflow point of e^x
    CHECK(std::isfinite(bessel::k0_scaled(1e6)));
    CHECK(bessel::k0_scaled(1e6) > 0.0);
    CHECK(std::isfinite(bessel::k1_scaled(1e6)));
}

TEST_CASE("domain errors for nonpositive or non-finite arguments") {
    CHECK_THROWS_AS(bessel::k0(0.0), validation_error);
    CHECK_THROWS_AS(bessel::k0(-1.0), validation_error);
    CHECK_THROWS_AS(bessel::k1(0.0), validation_error);
    CHECK_THROWS_AS(bessel::k0(std::numeric_limits<double>::quiet_NaN()), validation_error);
    CHECK_THROWS_AS(bessel::k1(std::numeric_limits<double>::infinity()), validation_error);
}
