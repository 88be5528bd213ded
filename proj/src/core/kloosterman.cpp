#include "kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "characters.hpp"
#include "parallel.hpp"

namespace gkl {

namespace {

std::complex<double> unit_circle(double frac) {
    double t = 2.0 * std::numbers::pi * frac;
    return {std::cos(t), std::sin(t)};
}

/// e(a / m) for a residue a mod m.
std::complex<double> e_frac(u64 a, u64 m) {
    return unit_circle(static_cast<double>(a % m) / static_cast<double>(m));
}

u64 mod_reduce(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

}  // namespace

Rational Rational::make(i64 n, i64 d) {
    if (d == 0) throw domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational{n, d};
}

int Rational::v(u64 q) const {
    if (num == 0) throw domain_error("Rational::v of zero");
    int v = 0;
    i64 n = num < 0 ? -num : num, d = den;
    while (n % static_cast<i64>(q) == 0) { n /= static_cast<i64>(q); ++v; }
    while (d % static_cast<i64>(q) == 0) { d /= static_cast<i64>(q); --v; }
    return v;
}

u64 Rational::unit_mod(u64 q, unsigned e) const {
    u64 m = 1;
    for (unsigned i = 0; i < e; ++i) m *= q;
    i64 n = num, d = den;
    while (n % static_cast<i64>(q) == 0) n /= static_cast<i64>(q);
    while (d % static_cast<i64>(q) == 0) d /= static_cast<i64>(q);
    u64 nn = mod_reduce(n, m), dd = mod_reduce(d, m);
    return mulmod(nn, inv_mod_general(dd, m), m);
}

u64 inv_mod_general(u64 a, u64 m) {
    a %= m;
    if (m == 1) return 0;
    i64 r0 = static_cast<i64>(m), r1 = static_cast<i64>(a), t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1; r0 = r1; r1 = r2;
        i64 t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw domain_error("inv_mod_general: not invertible");
    i64 inv = t0 % static_cast<i64>(m);
    if (inv < 0) inv += static_cast<i64>(m);
    return static_cast<u64>(inv);
}

KlResult kl_local(i64 m1, i64 m2, const Rational& mu, u64 q) {
    KlResult r;
    r.exact = CycValue::zero(q);
    int v = mu.v(q);
    if (v > 0 || (v & 1)) {
        r.reason = "outside support";
        return r;
    }
    unsigned j = static_cast<unsigned>(-v) / 2;
    if (j == 0) {
        // Single degenerate term t1 = t2 = 0.
        r.value = 1.0;
        r.exact = CycValue::one(q);
        return r;
    }
    u64 m = 1;
    for (unsigned i = 0; i < j; ++i) m *= q;
    u64 u = mu.unit_mod(q, j);
    u64 a1 = mod_reduce(m1, m), a2 = mod_reduce(m2, m);
    // sum over units a mod q^j of e((m1 a + m2 u abar)/q^j)
    CycValue acc = CycValue::zero(q);
    acc.order = m;
    for (u64 a = 1; a < m; ++a) {
        if (a % q == 0) continue;
        u64 abar = inv_mod_general(a, m);
        u64 e = (mulmod(a1, a, m) + mulmod(a2, mulmod(u, abar, m), m)) % m;
        auto it = acc.coeffs.find(e);
        if (it == acc.coeffs.end()) acc.coeffs[e] = 1;
        else ++it->second;
    }
    r.exact = acc.normalized();
    r.value = r.exact.float_shadow();
    return r;
}

std::complex<double> kl_global(i64 m1, i64 m2, u64 c) {
    if (c == 1) return 1.0;
    u64 a1 = mod_reduce(m1, c), a2 = mod_reduce(m2, c);
    auto chunk = [&](u64 b, u64 e) {
        std::complex<double> s = 0.0;
        for (u64 x = b; x < e; ++x) {
            if (std::gcd(x, c) != 1) continue;
            u64 xb = inv_mod_general(x, c);
            s += e_frac(mulmod(a1, x, c) + mulmod(a2, xb, c), c);
        }
        return s;
    };
    return parallel_reduce(
        c, std::complex<double>{0.0, 0.0},
        [&](u64 b, u64 e) { return chunk(b == 0 ? 1 : b, e); },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });
}

std::complex<double> kl_global_crt(i64 m1, i64 m2, u64 c) {
    // S(m1, m2; c1 c2) = S(m1 c2bar, m2 c2bar; c1) * S(m1 c1bar, m2 c1bar; c2),
    // applied prime power by prime power.
    std::complex<double> prod = 1.0;
    auto factor = [&](u64 q, u64 qj) {
        u64 cprime = c / qj;  // coprime cofactor
        (void)q;
        u64 cb = inv_mod_general(cprime % qj, qj);
        u64 a1 = mulmod(mod_reduce(m1, qj), cb, qj);
        u64 a2 = mulmod(mod_reduce(m2, qj), cb, qj);
        prod *= kl_global(static_cast<i64>(a1), static_cast<i64>(a2), qj);
    };
    u64 rest = c;
    for (u64 q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        u64 qj = 1;
        while (rest % q == 0) { rest /= q; qj *= q; }
        factor(q, qj);
    }
    if (rest > 1) factor(rest, rest);
    return prod;
}

KlResult ramanujan(i64 a, u64 q, unsigned e) {
    u64 m = 1;
    for (unsigned i = 0; i < e; ++i) m *= q;
    u64 ar = mod_reduce(a, m);
    KlResult r;
    CycValue acc = CycValue::zero(q);
    acc.order = m;
    if (m == 1) {
        r.value = 1.0;
        r.exact = CycValue::one(q);
        return r;
    }
    for (u64 x = 1; x < m; ++x) {
        if (x % q == 0) continue;
        u64 ex = mulmod(ar, x, m);
        auto it = acc.coeffs.find(ex);
        if (it == acc.coeffs.end()) acc.coeffs[ex] = 1;
        else ++it->second;
    }
    r.exact = acc.normalized();
    r.value = r.exact.float_shadow();
    return r;
}

unsigned UnitChar::conductor() const {
    if (alpha0 != 0) return n;  // wild alpha of exact depth n (n >= 2 intended)
    return tame_exp % (pp.p - 1) ? 1 : 0;
}

std::complex<double> UnitChar::eval(u64 x) const {
    u64 p = pp.p;
    x %= pp.modulus;
    if (x % p == 0) throw domain_error("UnitChar::eval: not a unit");
    std::complex<double> tame = 1.0;
    u64 te = tame_exp % (p - 1);
    if (te) {
        u64 d = dlog_mod_p(x % p, p);
        tame = unit_circle(static_cast<double>(te * d % (p - 1)) /
                           static_cast<double>(p - 1));
    }
    if (alpha0 == 0) return tame;
    u64 tu = teichmuller(x, pp);
    PadicScalar ang = PadicScalar::make(pp, 0, mulmod(x, inv_mod(tu, pp), pp.modulus));
    PadicScalar alpha = PadicScalar::make(pp, -static_cast<int>(n), alpha0 % pp.modulus);
    RootOfUnity w = psi_p(alpha * padic_log(ang, pp.n));
    return tame * w.to_complex();
}

GaussResult gauss_sum(const UnitChar& chi, unsigned n) {
    GaussResult g;
    g.conductor_match = (chi.conductor() == n);
    u64 m = 1;
    for (unsigned i = 0; i < n; ++i) m *= chi.pp.p;
    std::complex<double> s = 0.0;
    for (u64 x = 1; x < m; ++x) {
        if (x % chi.pp.p == 0) continue;
        s += chi.eval(x) * e_frac(x, m);
    }
    g.value = s;
    return g;
}

u64 crt_inverse(u64 a1, u64 a2, u64 n1, u64 n2) {
    if (std::gcd(n1, n2) != 1) throw domain_error("crt_inverse: (n1,n2) != 1");
    if (n1 > 1 && std::gcd(a1 % n1, n1) != 1)
        throw domain_error("crt_inverse: (a1,n1) != 1");
    if (n2 > 1 && std::gcd(a2 % n2, n2) != 1)
        throw domain_error("crt_inverse: (a2,n2) != 1");
    u64 m = n1 * n2;
    if (m == 1) return 0;
    u64 a1b = n1 > 1 ? inv_mod_general(a1 % n1, n1) : 0;
    u64 a2b = n2 > 1 ? inv_mod_general(a2 % n2, n2) : 0;
    u64 n1b = n2 > 1 ? inv_mod_general(n1 % n2, n2) : 0;
    u64 n2b = n1 > 1 ? inv_mod_general(n2 % n1, n1) : 0;
    // a1bar n2 n2bar^2 + a2bar n1 n1bar^2 mod n1 n2
    u64 t1 = mulmod(mulmod(a1b, n2 % m, m), mulmod(n2b, n2b, m), m);
    u64 t2 = mulmod(mulmod(a2b, n1 % m, m), mulmod(n1b, n1b, m), m);
    u64 res = (t1 + t2) % m;
    u64 base = (mulmod(a1 % m, n2 % m, m) + mulmod(a2 % m, n1 % m, m)) % m;
    if (mulmod(base, res, m) != 1 % m)
        throw domain_error("crt_inverse: identity check failed");
    return res;
}

}  // namespace gkl
