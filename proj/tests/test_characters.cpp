#include <doctest.h>

#include <cmath>

#include "characters.hpp"

using namespace gkl;

namespace {
ThetaChar inert_theta(u64 p, unsigned cond, unsigned prec = 8) {
    EtaleQuadratic alg =
        EtaleQuadratic::make(PrimePower(p, prec), AlgKind::inert);
    return ThetaChar::make(alg, cond, 1);
}
}  // namespace

TEST_CASE("Teichmuller lifts and discrete logs") {
    PrimePower pp(5, 3);
    u64 t2 = teichmuller(2, pp);
    CHECK(t2 % 5 == 2);
    CHECK(powmod(t2, 4, 125) == 1);
    CHECK(teichmuller(1, pp) == 1);
    u64 g = generator_mod_p(5);
    CHECK(g == 2);
    for (u64 a = 1; a < 5; ++a) CHECK(powmod(g, dlog_mod_p(a, 5), 5) == a);
}

TEST_CASE("theta structure constants") {
    ThetaChar th = inert_theta(5, 2);
    CHECK(th.i0() == 2);
    CHECK(th.c_pi() == 4);
    QuadElement a = th.alpha_theta();
    CHECK(a.x.is_zero());        // pure sqrt(D) part
    CHECK(a.y.valuation() == -2);
    ThetaChar bar = th.conjugated();
    // alpha0 flips sign modulo p^i0 (all that evaluation can see)
    CHECK((th.alpha0 + bar.alpha0) % 25 == 0);
    CHECK(bar.conjugated().alpha0 == th.alpha0);
}

TEST_CASE("frozen inert evaluation") {
    ThetaChar th = inert_theta(5, 2);
    PrimePower pp = th.alg.pp;
    QuadElement z = QuadElement::make(th.alg, PadicScalar::from_int(pp, 1),
                                      PadicScalar::from_int(pp, 5));
    CharValue v = eval_theta(th, z);  // e(2/5)
    CHECK(v.tame_den == 1);
    std::complex<double> want = std::polar(1.0, 2.0 * M_PI * 2.0 / 5.0);
    CHECK(std::abs(v.to_complex() - want) < 1e-12);
}

TEST_CASE("theta is trivial on F^x and multiplicative") {
    ThetaChar th = inert_theta(5, 3);
    PrimePower pp = th.alg.pp;
    QuadElement f =
        QuadElement::from_scalar(th.alg, PadicScalar::from_int(pp, 7));
    CharValue vf = eval_theta(th, f);
    CHECK(std::abs(vf.to_complex() - 1.0) < 1e-12);
    QuadElement z = QuadElement::make(th.alg, PadicScalar::from_int(pp, 2),
                                      PadicScalar::from_int(pp, 10));
    QuadElement w = QuadElement::make(th.alg, PadicScalar::from_int(pp, 1),
                                      PadicScalar::from_int(pp, 25));
    CharValue prod = eval_theta(th, z * w);
    CharValue split = eval_theta(th, z).mul(eval_theta(th, w));
    CHECK((prod.wild - split.wild).is_zero());
    // evaluation outside F^x U_L(1) errors loudly
    QuadElement bad = QuadElement::make(th.alg, PadicScalar::from_int(pp, 1),
                                        PadicScalar::from_int(pp, 1));
    CHECK_THROWS_AS(eval_theta(th, bad), domain_error);
}

TEST_CASE("split chi1 composes tame and wild parts") {
    EtaleQuadratic alg =
        EtaleQuadratic::make(PrimePower(5, 8), AlgKind::split);
    ThetaChar th = ThetaChar::make(alg, 2, 1, 1);
    PrimePower pp = alg.pp;
    CharValue at2 = eval_chi1(th, PadicScalar::from_int(pp, 2));
    CHECK(at2.tame_den == 4);  // omega(2) is a primitive 4th root
    // chi1(p) := 1
    CharValue atp = eval_chi1(th, PadicScalar::from_int(pp, 5));
    CHECK(std::abs(atp.to_complex() - 1.0) < 1e-12);
    // multiplicativity on units
    CharValue a = eval_chi1(th, PadicScalar::from_int(pp, 7));
    CharValue b = eval_chi1(th, PadicScalar::from_int(pp, 11));
    CharValue ab = eval_chi1(th, PadicScalar::from_int(pp, 77));
    CHECK(std::abs(ab.to_complex() - a.to_complex() * b.to_complex()) < 1e-12);
    // theta = (chi1, chi1^{-1}) is trivial on the diagonal
    QuadElement diag = QuadElement::make(alg, PadicScalar::from_int(pp, 7),
                                         PadicScalar::from_int(pp, 7));
    CHECK(std::abs(eval_theta(th, diag).to_complex() - 1.0) < 1e-12);
}

TEST_CASE("family indices at radius one and per step") {
    for (u64 p : {5ull, 7ull, 11ull}) {
        PrimePower pp(p, 8);
        ThetaChar sp = ThetaChar::make(
            EtaleQuadratic::make(pp, AlgKind::split), 4, 1);
        ThetaChar in = ThetaChar::make(
            EtaleQuadratic::make(pp, AlgKind::inert), 4, 1);
        ThetaChar ra = ThetaChar::make(
            EtaleQuadratic::make(pp, AlgKind::ramified), 8, 1);
        CHECK(family_index(sp, 1, 0) == p - 1);
        CHECK(family_index(in, 1, 0) == p + 1);
        CHECK(family_index(ra, 1, 0) == p);
        for (unsigned n = 2; n <= 3; ++n) {
            CHECK(family_index(sp, n, n - 1) == p);
            CHECK(family_index(in, n, n - 1) == p);
            CHECK(family_index(ra, n, n - 1) == p);
        }
    }
}

TEST_CASE("frozen family-representative counts") {
    ThetaChar sp = ThetaChar::make(
        EtaleQuadratic::make(PrimePower(5, 8), AlgKind::split), 3, 1);
    CHECK(alpha_family(sp, 1, 0).size() == 4);
    ThetaChar ra = ThetaChar::make(
        EtaleQuadratic::make(PrimePower(5, 8), AlgKind::ramified), 8, 1);
    CHECK(alpha_family(ra, 2, 0).size() == 25);
    ThetaChar in = inert_theta(5, 3);
    CHECK(alpha_family(in, 1, 0).size() == 6);
}

TEST_CASE("family average orthogonality spot checks") {
    ThetaChar th = inert_theta(5, 2);
    PrimePower pp = th.alg.pp;
    // x in O_F^x U_L(1): average at j=1 reproduces theta(x)
    QuadElement in1 = QuadElement::make(th.alg, PadicScalar::from_int(pp, 2),
                                        PadicScalar::from_int(pp, 10));
    CharValue avg = family_average(th, 1, in1);
    CharValue want = eval_theta(th, in1);
    CHECK((avg.wild - want.wild).is_zero());
    CHECK(in_ZUn(in1, 1));
    // x off O_F^x U_L(2): average at j=2 is exactly zero
    ThetaChar th3 = inert_theta(5, 3);
    QuadElement off = QuadElement::make(th3.alg, PadicScalar::from_int(th3.alg.pp, 1),
                                        PadicScalar::from_int(th3.alg.pp, 5));
    CHECK(!in_ZUn(off, 2));
    CHECK(family_average(th3, 2, off).is_zero());
}
