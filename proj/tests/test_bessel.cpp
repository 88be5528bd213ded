#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bessel.hpp"

using namespace gkl;

TEST_CASE("frozen reference values") {
    CHECK(std::abs(bessel_j(0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(bessel_j(1, 0.0)) < 1e-15);
    CHECK(std::abs(bessel_j(1, 1.0) - 0.4400505857449335) < 1e-13);
    CHECK(std::abs(bessel_j(2, 1.0) - 0.1149034849319005) < 1e-13);
}

TEST_CASE("agreement with the library implementation up to x = 50") {
    for (unsigned nu : {0u, 1u, 2u, 3u, 5u, 11u, 15u, 23u}) {
        for (double x = 0.125; x <= 50.0; x += 0.625) {
            double ours = bessel_j(nu, x);
            double ref = std::cyl_bessel_j(static_cast<double>(nu), x);
            CHECK(std::abs(ours - ref) < 1e-12);
        }
    }
}

TEST_CASE("recurrence relation holds across the series/Miller boundary") {
    for (double x : {0.5, 2.0, 6.5, 13.0, 40.0}) {
        for (unsigned nu = 1; nu <= 12; ++nu) {
            double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
            double rhs = 2.0 * nu / x * bessel_j(nu, x);
            CHECK(std::abs(lhs - rhs) < 1e-11);
        }
    }
}

TEST_CASE("high order at small argument is tiny but finite") {
    double v = bessel_j(40, 1.0);
    CHECK(v > 0.0);
    CHECK(v < 1e-45);
    CHECK(std::isfinite(bessel_j(60, 50.0)));
}
