#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "dualsum.hpp"

using namespace gkl;

namespace {
ThetaChar inert_theta(u64 p, unsigned cond, unsigned prec_extra = 8) {
    EtaleQuadratic alg =
        EtaleQuadratic::make(PrimePower(p, cond + prec_extra), AlgKind::inert);
    return ThetaChar::make(alg, cond, 1);
}
}  // namespace

TEST_CASE("profile construction guards its domain") {
    ThetaChar th = inert_theta(5, 2);
    CHECK_THROWS_AS(whittaker_profile(th, 1, 2, 1), domain_error);  // k <= i0
    EtaleQuadratic sp =
        EtaleQuadratic::make(PrimePower(5, 10), AlgKind::split);
    ThetaChar spth = ThetaChar::make(sp, 2, 1);
    CHECK_THROWS_AS(whittaker_profile(spth, 1, 4, 1), domain_error);
}

TEST_CASE("Fourier round trip recovers the gp slice") {
    ThetaChar th = inert_theta(5, 2);
    WhittakerProfile prof = whittaker_profile(th, 1, 3, 1);
    CHECK(prof.pk == 125);
    for (u64 m : {0ull, 1ull, 7ull, 50ull, 124ull}) {
        std::complex<double> back = profile_forward(prof, static_cast<i64>(m));
        CHECK(std::abs(back - prof.gp_slice[m]) < 1e-8);
    }
}

TEST_CASE("Parseval ties the profile to the slice") {
    ThetaChar th = inert_theta(5, 2);
    WhittakerProfile prof = whittaker_profile(th, 1, 3, 1);
    double lhs = 0.0, rhs = 0.0;
    for (u64 a = 0; a < prof.pk; ++a) {
        lhs += std::norm(prof.gp_slice[a]);
        rhs += std::norm(prof.F[a]);
    }
    rhs *= static_cast<double>(prof.pk);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, lhs));
}

TEST_CASE("profile is supported on units") {
    ThetaChar th = inert_theta(5, 2);
    WhittakerProfile prof = whittaker_profile(th, 1, 3, 1);
    for (u64 u = 0; u < prof.pk; ++u) {
        if (u % 5 != 0) continue;
        CHECK(std::abs(prof.F[u]) < 1e-8);
    }
}

TEST_CASE("support dichotomy below the Ramanujan range") {
    ThetaChar th = inert_theta(5, 2);  // c(pi) = 4
    WhittakerProfile prof = whittaker_profile(th, 1, 3, 1);
    for (i64 m1 = 1; m1 < 125; ++m1) {
        if (m1 % 5 == 0) continue;
        SupportCheck sc = gtilde_support(prof, m1, 1);
        CHECK(sc.threshold == 2);  // 2k - c(pi)
        std::complex<double> g = gtilde(prof, m1, 1);
        if (!sc.in_support) {
            CHECK(std::abs(g) < 1e-8);
        } else {
            CHECK(gtilde_bound_ratio(prof, g) <= 8.0);
        }
    }
}

TEST_CASE("Ramanujan degeneration at k = c(pi)") {
    ThetaChar th = inert_theta(5, 2);
    WhittakerProfile prof = whittaker_profile(th, 1, 4, 1);
    for (i64 m1 : {1, 2, 3, 7, 24, 123}) {
        if (m1 % 5 == 0) continue;
        std::complex<double> g = gtilde(prof, m1, 1);
        std::complex<double> want = gtilde_ramanujan(prof, m1, 1);
        CHECK(std::abs(g - want) < 1e-9 * std::max(1.0, std::abs(want)));
    }
    CHECK_THROWS_AS(gtilde(prof, 1, 5), domain_error);  // p | ell
}
