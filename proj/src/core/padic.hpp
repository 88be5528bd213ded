#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace gkl {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (non-unit inverse, log outside the principal units, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a computation would need more residue precision than the
/// configuration carries.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// (a*b) mod m for 64-bit operands via 128-bit intermediate.
inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);
bool is_prime_u64(u64 n);

/**
 * A fixed odd prime p >= 5 together with a working precision exponent n,
 * i.e. the residue ring Z/p^n.
 *
 * p >= 5 is required so that the p-adic logarithm is an isomorphism on every
 * principal-unit group we use, including the ramified quadratic case e_L = 2
 * (series convergence needs e < p-1).  Moduli are kept within native 64-bit
 * residues (products via 128-bit); configurations beyond that are rejected.
 */
struct PrimePower {
    u64 p = 0;
    unsigned n = 0;
    u64 modulus = 0;  // p^n

    PrimePower() = default;
    PrimePower(u64 p_, unsigned n_);

    bool operator==(const PrimePower&) const = default;

    /// Same prime, different precision exponent.
    PrimePower with_precision(unsigned m) const { return PrimePower(p, m); }
};

/// Modular inverse of a in (Z/p^n)^*; error if a is not a unit.
u64 inv_mod(u64 a, const PrimePower& pp);

/**
 * An element of Q_p known to finite precision, stored as p^val * unit with
 * the unit part a residue in (Z/p^n)^*.  Zero is carried as an explicit flag.
 *
 * The representation is "relative precision n": the value is determined
 * modulo p^(val+n).  All arithmetic keeps the working precision of the
 * left-hand operand's PrimePower; mixing different primes is an error.
 */
struct PadicScalar {
    PrimePower pp;
    int val = 0;
    u64 unit = 1;
    bool zero = true;

    PadicScalar() = default;

    /// Exact zero at the given precision.
    static PadicScalar make_zero(const PrimePower& pp);
    /// The value p^val * unit (unit must be coprime to p).
    static PadicScalar make(const PrimePower& pp, int val, u64 unit);
    /// Embed an integer, extracting its p-valuation.
    static PadicScalar from_int(const PrimePower& pp, i64 x);
    /// The rational a/b with a, b integers, b nonzero.
    static PadicScalar from_ratio(const PrimePower& pp, i64 a, i64 b);

    bool is_zero() const { return zero; }
    int valuation() const;

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator/(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar inverse() const;

    bool operator==(const PadicScalar& o) const;

    /// The residue of the value mod p^m (requires val >= 0 and enough
    /// precision: val + n >= m).
    u64 residue(unsigned m) const;

    /// Rescale by p^s (shift the valuation; exact).
    PadicScalar shift(int s) const;

    std::string str() const;
};

/**
 * A p-power root of unity e^(2*pi*i*exponent/order), order = p^m.
 * Canonical form divides out common p factors of exponent and order.
 */
struct RootOfUnity {
    u64 order = 1;     // p^m (1 means the trivial root)
    u64 exponent = 0;  // residue mod order

    static RootOfUnity one() { return {1, 0}; }
    static RootOfUnity make(u64 p, u64 order, u64 exponent);

    RootOfUnity mul(const RootOfUnity& o, u64 p) const;
    RootOfUnity inverse() const;
    bool is_one() const { return order == 1; }
    std::complex<double> to_complex() const;
    bool operator==(const RootOfUnity&) const = default;
};

/**
 * The standard additive character psi_p of conductor 0:
 * psi_p(x) = e(x') with x' == x mod Z_p (the fractional part of x).
 * Trivial when v(x) >= 0.
 */
RootOfUnity psi_p(const PadicScalar& x);

/**
 * Truncated p-adic logarithm on the principal units U_F(1):
 * log(u) = (u-1) - (u-1)^2/2 + (u-1)^3/3 - ..., terms of valuation >= prec
 * dropped.  Error if u is not in U_F(1).
 */
PadicScalar padic_log(const PadicScalar& u, unsigned prec);

/**
 * An exact element of the ring Z[zeta] generated by p-power roots of unity,
 * as a sparse exponent -> integer-coefficient map on p^M-th roots, together
 * with a floating complex shadow.
 *
 * After normalize() the support lies in the power basis 0 <= e < phi(p^M)
 * and the zero element is exactly the empty map.
 */
struct CycValue {
    u64 p = 0;
    u64 order = 1;  // p^M
    std::map<u64, i64> coeffs;

    static CycValue zero(u64 p) { return CycValue{p, 1, {}}; }
    static CycValue one(u64 p) { return CycValue{p, 1, {{0, 1}}}; }
    static CycValue from_root(u64 p, const RootOfUnity& r, i64 coef = 1);

    /// Lift to a common order (orders are p-powers, so lcm = max).
    CycValue lifted_to(u64 new_order) const;

    CycValue operator+(const CycValue& o) const;
    CycValue operator-(const CycValue& o) const;
    CycValue operator*(const CycValue& o) const;
    CycValue operator*(i64 s) const;
    CycValue operator-() const;

    void add_root(const RootOfUnity& r, i64 coef = 1);

    /// Canonical power-basis form; idempotent; exact zero test afterwards.
    CycValue normalized() const;
    bool is_zero() const;  // normalizes internally

    /// Floating shadow of the exact value, plus a tracked rounding bound.
    std::complex<double> float_shadow() const;
    double shadow_error_bound() const;

    std::string to_json() const;
};

CycValue cyc_normalize(const CycValue& v);

}  // namespace gkl
