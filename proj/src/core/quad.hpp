#pragma once

#include "padic.hpp"

namespace gkl {

enum class AlgKind { split, inert, ramified };

const char* kind_name(AlgKind k);
AlgKind kind_from_name(const std::string& s);

/**
 * An etale quadratic algebra L over F = Q_p:
 *   - split:    F x F,
 *   - inert:    F(sqrt(D)) with D the smallest positive non-residue unit,
 *   - ramified: F(sqrt(D)) with v(D) = 1, D = p or p * (non-residue).
 * e_L = 2 exactly in the ramified case.
 */
struct EtaleQuadratic {
    PrimePower pp;
    AlgKind kind = AlgKind::split;
    PadicScalar D;  // absent (zero) for split

    /// Build with the fixed representative D; `ramified_twist` selects
    /// D = p*r instead of D = p in the ramified case.
    static EtaleQuadratic make(const PrimePower& pp, AlgKind kind,
                               bool ramified_twist = false);

    unsigned e_L() const { return kind == AlgKind::ramified ? 2 : 1; }

    /// Smallest positive quadratic non-residue mod p.
    static u64 smallest_nonresidue(u64 p);

    std::string to_json() const;
};

/**
 * An element of L at the algebra's working precision: x + y*sqrt(D) in the
 * field cases, the coordinate pair (x, y) in the split case.
 */
struct QuadElement {
    EtaleQuadratic alg;
    PadicScalar x, y;

    static QuadElement make(const EtaleQuadratic& alg, const PadicScalar& x,
                            const PadicScalar& y);
    /// Embed a scalar f as f (+ 0*sqrt(D)) resp. (f, f).
    static QuadElement from_scalar(const EtaleQuadratic& alg, const PadicScalar& f);
    static QuadElement one(const EtaleQuadratic& alg);

    bool is_zero() const;
    bool is_invertible() const;

    QuadElement operator+(const QuadElement& o) const;
    QuadElement operator-(const QuadElement& o) const;
    QuadElement operator*(const QuadElement& o) const;
    QuadElement inverse() const;
    QuadElement operator/(const QuadElement& o) const;

    QuadElement conj() const;
    PadicScalar norm() const;   // z * conj(z), lands in F
    PadicScalar trace() const;  // z + conj(z), lands in F

    /// Valuation normalized so that v_L(uniformizer) = 1: the coordinate
    /// valuation for split/inert (min of the two), v_p(Nm) for ramified.
    int v_L() const;

    /// Membership in the principal-unit filtration U_L(n), n >= 0.
    bool in_UL(unsigned n) const;

    bool operator==(const QuadElement& o) const;
};

PadicScalar norm(const QuadElement& z);

/// Factorization witness for z in F^x * U_L(1).
struct ZU1Factorization {
    bool member = false;
    PadicScalar f;   // F^x part (the x-coordinate's unit*power)
    QuadElement v;   // principal-unit part, v in U_L(1)
};

/**
 * Decide z in F^x * U_L(1) and produce a witness z = f * v.
 * Criteria: split needs x/y in U_F(1); inert needs v(y) > v(x); ramified
 * needs v(y) >= v(x).  Requires z invertible.
 */
ZU1Factorization in_ZU1(const QuadElement& z);

/// psi_L = psi_p after the trace; conductor is exactly -e_L + 1.
RootOfUnity psi_L(const QuadElement& z);

/// p-adic logarithm on U_L(1), componentwise series over L; truncation at
/// x-coordinate precision `prec` (in v_F units).
QuadElement log_L(const QuadElement& u, unsigned prec);

}  // namespace gkl
