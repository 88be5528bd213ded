#include <doctest.h>

#include "quad.hpp"

using namespace gkl;

namespace {
QuadElement elem(const EtaleQuadratic& alg, i64 x, i64 y) {
    return QuadElement::make(alg, PadicScalar::from_int(alg.pp, x),
                             PadicScalar::from_int(alg.pp, y));
}
}  // namespace

TEST_CASE("algebra representatives") {
    PrimePower pp(5, 3);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    CHECK(inert.D.residue(3) == 2);  // 2 is the smallest non-residue mod 5
    CHECK(EtaleQuadratic::smallest_nonresidue(7) == 3);
    EtaleQuadratic ram = EtaleQuadratic::make(pp, AlgKind::ramified);
    CHECK(ram.D.valuation() == 1);
    CHECK(ram.D.unit == 1);
    EtaleQuadratic ram2 = EtaleQuadratic::make(pp, AlgKind::ramified, true);
    CHECK(ram2.D.unit == 2);
    CHECK(ram.e_L() == 2);
    CHECK(inert.e_L() == 1);
}

TEST_CASE("norm and trace in the inert field") {
    PrimePower pp(5, 3);
    EtaleQuadratic alg = EtaleQuadratic::make(pp, AlgKind::inert);
    QuadElement z = elem(alg, 1, 1);  // 1 + sqrt(2)
    CHECK(z.norm().residue(3) == 124);  // 1 - 2 == -1
    CHECK(z.trace().residue(3) == 2);
    CHECK((z * z.conj()).y.is_zero());
    CHECK((z * z.inverse()) == QuadElement::one(alg));
}

TEST_CASE("split coordinates multiply componentwise") {
    PrimePower pp(5, 3);
    EtaleQuadratic alg = EtaleQuadratic::make(pp, AlgKind::split);
    QuadElement z = elem(alg, 2, 3);
    QuadElement w = elem(alg, 4, 7);
    QuadElement zw = z * w;
    CHECK(zw.x.residue(3) == 8);
    CHECK(zw.y.residue(3) == 21);
    CHECK(z.conj().x.residue(3) == 3);  // conjugation swaps coordinates
    CHECK(z.norm().residue(3) == 6);
    CHECK(z.trace().residue(3) == 5);
}

TEST_CASE("normalized valuation per kind") {
    PrimePower pp(5, 4);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    CHECK(elem(inert, 25, 5).v_L() == 1);
    EtaleQuadratic ram = EtaleQuadratic::make(pp, AlgKind::ramified);
    // v_L(sqrt(D)) = 1 (the uniformizer), v_L(p) = 2.
    CHECK(elem(ram, 0, 1).v_L() == 1);
    CHECK(elem(ram, 5, 0).v_L() == 2);
    CHECK(elem(ram, 5, 1).v_L() == 1);
}

TEST_CASE("principal unit filtration membership") {
    PrimePower pp(5, 4);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    CHECK(elem(inert, 1, 5).in_UL(1));
    CHECK(!elem(inert, 1, 1).in_UL(1));
    CHECK(elem(inert, 26, 25).in_UL(2));
    CHECK(!elem(inert, 26, 25).in_UL(3));
    EtaleQuadratic ram = EtaleQuadratic::make(pp, AlgKind::ramified);
    CHECK(elem(ram, 1, 1).in_UL(1));   // 1 + sqrt(D), v_L(sqrt(D)) = 1
    CHECK(!elem(ram, 1, 1).in_UL(2));
    CHECK(elem(ram, 6, 0).in_UL(2));
}

TEST_CASE("Z U_L(1) factorization witnesses") {
    PrimePower pp(5, 4);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    ZU1Factorization fz = in_ZU1(elem(inert, 3, 5));
    CHECK(fz.member);
    CHECK(fz.v.in_UL(1));
    QuadElement back = QuadElement::from_scalar(inert, fz.f) * fz.v;
    CHECK(back == elem(inert, 3, 5));
    CHECK(!in_ZU1(elem(inert, 1, 1)).member);

    EtaleQuadratic sp = EtaleQuadratic::make(pp, AlgKind::split);
    CHECK(in_ZU1(elem(sp, 6, 1)).member);   // ratio 6 in U(1)
    CHECK(!in_ZU1(elem(sp, 2, 1)).member);
}

TEST_CASE("psi_L is psi_p after the trace") {
    PrimePower pp(5, 4);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    PadicScalar half = PadicScalar::from_ratio(pp, 1, 5);
    QuadElement z = QuadElement::make(inert, half, half);
    RootOfUnity r = psi_L(z);  // trace = 2/5
    CHECK(r.order == 5);
    CHECK(r.exponent == 2);
}

TEST_CASE("log_L is additive on commuting principal units") {
    PrimePower pp(5, 6);
    EtaleQuadratic inert = EtaleQuadratic::make(pp, AlgKind::inert);
    QuadElement u = elem(inert, 6, 5);
    QuadElement v = elem(inert, 1, 10);
    QuadElement lhs = log_L(u * v, 5);
    QuadElement rhs = log_L(u, 5) + log_L(v, 5);
    QuadElement diff = lhs - rhs;
    // both sides agree below the truncation threshold
    CHECK((diff.x.is_zero() || diff.x.valuation() >= 5));
    CHECK((diff.y.is_zero() || diff.y.valuation() >= 5));
    CHECK_THROWS_AS(log_L(elem(inert, 2, 0), 5), domain_error);
}
