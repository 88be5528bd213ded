#pragma once

#include <complex>

#include "padic.hpp"

namespace gkl {

/// A rational number carried exactly; used for the modulus argument mu.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    static Rational make(i64 n, i64 d);
    int v(u64 q) const;            // q-adic valuation (num must be nonzero)
    u64 unit_mod(u64 q, unsigned e) const;  // unit part of mu*q^(-v) mod q^e
    bool operator==(const Rational&) const = default;
};

/**
 * Classical local Kloosterman sum (Eq. 4.4 shape):
 *   KL_q(m1, m2, mu) = sum over t1, t2 in q^(v/2) Z/Z, t1 t2 == mu mod Z,
 *                      of e(m1 t1 + m2 t2)
 * which collapses to sum_{a unit mod q^j} e((m1 a + m2 u abar)/q^j) with
 * j = -v(mu)/2 and u the unit part of mu q^(2j).  Zero (with reason) when
 * v(mu) is odd or positive.
 */
struct KlResult {
    std::complex<double> value{0.0, 0.0};
    CycValue exact;  // authoritative for zero/integrality claims
    const char* reason = nullptr;  // set when the sum is structurally zero
};

KlResult kl_local(i64 m1, i64 m2, const Rational& mu, u64 q);

/// Global classical sum: sum_{x in (Z/c)^x} e((m1 x + m2 xbar)/c).
std::complex<double> kl_global(i64 m1, i64 m2, u64 c);

/// CRT-factored evaluation of kl_global through twisted local sums,
/// used as an independent oracle for the direct summation.
std::complex<double> kl_global_crt(i64 m1, i64 m2, u64 c);

/// Ramanujan sum: sum_{x in (Z/q^e)^x} e(a x / q^e).  Exact and float.
KlResult ramanujan(i64 a, u64 q, unsigned e);

/**
 * A unit character of (Z/p^n)^x, given by a tame exponent (of the
 * Teichmuller character) and an optional wild part alpha0/p^n (alpha0 a
 * unit; 0 means no wild part).
 */
struct UnitChar {
    PrimePower pp;    // working precision, pp.n >= n
    unsigned n = 1;   // modulus exponent
    u64 tame_exp = 0; // mod p-1
    u64 alpha0 = 0;   // unit residue, or 0 for a purely tame character

    unsigned conductor() const;
    std::complex<double> eval(u64 x) const;
};

struct GaussResult {
    std::complex<double> value{0.0, 0.0};
    bool conductor_match = true;  // metadata: c(chi) == n as required
};

/// Gauss sum sum_{x in (Z/p^n)^x} chi(x) e(x/p^n).
GaussResult gauss_sum(const UnitChar& chi, unsigned n);

/**
 * The CRT inverse of Lemma "compositeinverse0": for (n1,n2)=1 and units
 * a_i mod n_i, returns a1bar*n2*n2bar^2 + a2bar*n1*n1bar^2, the inverse of
 * a1 n2 + a2 n1 mod n1 n2 (asserted).
 */
u64 crt_inverse(u64 a1, u64 a2, u64 n1, u64 n2);

/// Inverse of a mod m (general modulus, extended Euclid).
u64 inv_mod_general(u64 a, u64 m);

}  // namespace gkl
