#include <doctest.h>

#include <cmath>
#include <complex>

#include "kloosterman.hpp"

using namespace gkl;

TEST_CASE("rational valuations and unit parts") {
    Rational mu = Rational::make(1, 25);
    CHECK(mu.v(5) == -2);
    CHECK(mu.unit_mod(5, 2) == 1);
    Rational r = Rational::make(50, 3);
    CHECK(r.v(5) == 2);
    CHECK(r.v(3) == -1);
    CHECK_THROWS_AS(Rational::make(1, 0), domain_error);
}

TEST_CASE("frozen classical values") {
    // S(1,1;5) = 2 + 2 cos(4 pi / 5)
    std::complex<double> s = kl_global(1, 1, 5);
    CHECK(std::abs(s.real() - 0.3819660112501051) < 1e-12);
    CHECK(std::abs(s.imag()) < 1e-12);
    KlResult loc = kl_local(1, 1, Rational::make(1, 25), 5);
    CHECK(std::abs(loc.value - s) < 1e-12);
    CHECK(!loc.exact.is_zero());
}

TEST_CASE("structural zeros carry reasons") {
    CHECK(kl_local(1, 1, Rational::make(1, 5), 5).reason != nullptr);   // odd v
    CHECK(kl_local(1, 1, Rational::make(5, 1), 5).reason != nullptr);   // v >= 0... positive
    CHECK(kl_local(1, 1, Rational::make(1, 9), 5).reason == nullptr);   // v = 0 at 5
}

TEST_CASE("global sums agree with their CRT factorization") {
    for (u64 c : {15ull, 35ull, 175ull, 245ull, 385ull}) {
        for (i64 m1 : {1, 2}) {
            std::complex<double> a = kl_global(m1, 3, c);
            std::complex<double> b = kl_global_crt(m1, 3, c);
            CHECK(std::abs(a - b) < 1e-9);
        }
    }
}

TEST_CASE("Ramanujan sums are exact integers") {
    KlResult r = ramanujan(5, 5, 2);
    CHECK(std::abs(r.value.real() + 5.0) < 1e-12);
    CHECK(std::abs(r.value.imag()) < 1e-12);
    CHECK(std::abs(ramanujan(1, 5, 2).value.real() - 0.0) < 1e-12);
    CHECK(std::abs(ramanujan(25, 5, 2).value.real() - 20.0) < 1e-12);
    CHECK(std::abs(ramanujan(3, 7, 1).value.real() + 1.0) < 1e-12);
}

TEST_CASE("Gauss sums have square-root modulus at matching conductor") {
    PrimePower pp(5, 6);
    UnitChar chi{pp, 2, 0, 7};  // wild character mod 25
    CHECK(chi.conductor() == 2);
    GaussResult g = gauss_sum(chi, 2);
    CHECK(g.conductor_match);
    CHECK(std::abs(std::abs(g.value) - 5.0) < 1e-9);
    UnitChar tame{pp, 2, 1, 0};  // conductor 1 < 2: flagged
    CHECK(tame.conductor() == 1);
    CHECK(!gauss_sum(tame, 2).conductor_match);
}

TEST_CASE("composite inverse lemma") {
    CHECK(crt_inverse(2, 2, 3, 5) == 1);
    for (u64 a1 : {1ull, 2ull}) {
        for (u64 a2 : {1ull, 3ull, 4ull}) {
            u64 s = (a1 * 5 + a2 * 3) % 15;
            CHECK(crt_inverse(a1, a2, 3, 5) == inv_mod_general(s, 15));
        }
    }
    CHECK(inv_mod_general(7, 40) == 23);
}
