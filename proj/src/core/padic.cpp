#include "padic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace gkl {

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit range.
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

PrimePower::PrimePower(u64 p_, unsigned n_) : p(p_), n(n_) {
    if (p < 5 || !is_prime_u64(p))
        throw domain_error("PrimePower: p must be a prime >= 5");
    if (n < 1) throw domain_error("PrimePower: precision exponent must be >= 1");
    // Keep p^n within 64-bit residues (products go through 128 bits).
    u64 m = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (m > (u64(1) << 62) / p)
            throw domain_error("PrimePower: p^n exceeds native arithmetic range");
        m *= p;
    }
    modulus = m;
}

u64 inv_mod(u64 a, const PrimePower& pp) {
    a %= pp.modulus;
    if (a % pp.p == 0) throw domain_error("inv_mod: not invertible");
    // Extended Euclid on (a, p^n).
    i64 m = static_cast<i64>(pp.modulus);
    i64 r0 = m, r1 = static_cast<i64>(a), t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1; r0 = r1; r1 = r2;
        i64 t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    i64 inv = t0 % m;
    if (inv < 0) inv += m;
    return static_cast<u64>(inv);
}

PadicScalar PadicScalar::make_zero(const PrimePower& pp) {
    PadicScalar z;
    z.pp = pp;
    z.zero = true;
    return z;
}

PadicScalar PadicScalar::make(const PrimePower& pp, int val, u64 unit) {
    unit %= pp.modulus;
    if (unit % pp.p == 0)
        throw domain_error("PadicScalar::make: unit part not coprime to p");
    PadicScalar s;
    s.pp = pp;
    s.val = val;
    s.unit = unit;
    s.zero = false;
    return s;
}

PadicScalar PadicScalar::from_int(const PrimePower& pp, i64 x) {
    if (x == 0) return make_zero(pp);
    bool neg = x < 0;
    u64 a = neg ? static_cast<u64>(-x) : static_cast<u64>(x);
    int v = 0;
    while (a % pp.p == 0) { a /= pp.p; ++v; }
    u64 u = a % pp.modulus;
    if (neg) u = pp.modulus - u;
    return make(pp, v, u);
}

PadicScalar PadicScalar::from_ratio(const PrimePower& pp, i64 a, i64 b) {
    if (b == 0) throw domain_error("PadicScalar::from_ratio: zero denominator");
    return from_int(pp, a) / from_int(pp, b);
}

int PadicScalar::valuation() const {
    if (zero) throw domain_error("valuation of zero");
    return val;
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    if (pp.p != o.pp.p) throw domain_error("mixed primes");
    // Mixed working precisions resolve to the smaller one.
    const PrimePower& tp = (pp.n <= o.pp.n) ? pp : o.pp;
    if (zero || o.zero) return make_zero(tp);
    return make(tp, val + o.val,
                mulmod(unit % tp.modulus, o.unit % tp.modulus, tp.modulus));
}

PadicScalar PadicScalar::inverse() const {
    if (zero) throw domain_error("inverse of zero");
    return make(pp, -val, inv_mod(unit, pp));
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
    return *this * o.inverse();
}

PadicScalar PadicScalar::operator-() const {
    if (zero) return *this;
    return make(pp, val, pp.modulus - unit);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    if (pp.p != o.pp.p) throw domain_error("mixed primes");
    if (zero) return o;
    if (o.zero) return *this;
    const PrimePower& tp = (pp.n <= o.pp.n) ? pp : o.pp;
    const PadicScalar& lo = (val <= o.val) ? *this : o;
    const PadicScalar& hi = (val <= o.val) ? o : *this;
    unsigned d = static_cast<unsigned>(hi.val - lo.val);
    if (d >= tp.n) {  // the higher term is below working precision
        PadicScalar r = lo;
        r.pp = tp;
        r.unit %= tp.modulus;
        return r;
    }
    u64 shift = 1;
    for (unsigned i = 0; i < d; ++i) shift *= tp.p;
    u64 s = (lo.unit % tp.modulus + mulmod(hi.unit % tp.modulus, shift, tp.modulus)) %
            tp.modulus;
    if (s == 0) return make_zero(tp);  // cancellation beyond precision
    int v = lo.val;
    while (s % tp.p == 0) { s /= tp.p; ++v; }
    return make(tp, v, s);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

bool PadicScalar::operator==(const PadicScalar& o) const {
    if (zero || o.zero) return zero == o.zero;
    return val == o.val && unit % pp.modulus == o.unit % o.pp.modulus;
}

u64 PadicScalar::residue(unsigned m) const {
    u64 mod = 1;
    for (unsigned i = 0; i < m; ++i) mod *= pp.p;
    if (zero) return 0;
    if (val < 0) throw domain_error("residue: negative valuation");
    if (static_cast<unsigned>(val) >= m) return 0;
    if (static_cast<unsigned>(val) + pp.n < m)
        throw precision_error("residue: insufficient precision");
    u64 sh = 1;
    for (int i = 0; i < val; ++i) sh *= pp.p;
    return mulmod(unit % mod, sh % mod, mod);
}

PadicScalar PadicScalar::shift(int s) const {
    if (zero) return *this;
    return make(pp, val + s, unit);
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (zero) { os << "0"; return os.str(); }
    os << pp.p << "^" << val << "*" << unit;
    return os.str();
}

RootOfUnity RootOfUnity::make(u64 p, u64 order, u64 exponent) {
    exponent %= order;
    while (order > 1 && exponent % p == 0) {
        // gcd-reduce the p-power order
        if (exponent == 0) return one();
        exponent /= p;
        order /= p;
    }
    return {order, exponent};
}

RootOfUnity RootOfUnity::mul(const RootOfUnity& o, u64 p) const {
    u64 ord = std::max(order, o.order);
    u64 e1 = exponent * (ord / order);
    u64 e2 = o.exponent * (ord / o.order);
    return make(p, ord, (e1 + e2) % ord);
}

RootOfUnity RootOfUnity::inverse() const {
    if (order == 1) return *this;
    return {order, (order - exponent) % order};
}

std::complex<double> RootOfUnity::to_complex() const {
    double t = 2.0 * std::numbers::pi * static_cast<double>(exponent) /
               static_cast<double>(order);
    return {std::cos(t), std::sin(t)};
}

RootOfUnity psi_p(const PadicScalar& x) {
    if (x.is_zero() || x.val >= 0) return RootOfUnity::one();
    unsigned m = static_cast<unsigned>(-x.val);
    if (m > x.pp.n)
        throw precision_error("psi_p: fractional part deeper than working precision");
    u64 mod = 1;
    for (unsigned i = 0; i < m; ++i) mod *= x.pp.p;
    return RootOfUnity::make(x.pp.p, mod, x.unit % mod);
}

PadicScalar padic_log(const PadicScalar& u, unsigned prec) {
    const PrimePower& pp = u.pp;
    PadicScalar x = u - PadicScalar::from_int(pp, 1);
    if (!x.is_zero() && x.valuation() < 1)
        throw domain_error("padic_log: argument not in U_F(1)");
    if (x.is_zero()) return PadicScalar::make_zero(pp);
    // Alternating series x - x^2/2 + x^3/3 - ...; with v(x) >= 1 and p >= 5
    // the term valuations j*v(x) - v_p(j) increase, so truncation at prec is
    // reached quickly.
    PadicScalar sum = PadicScalar::make_zero(pp);
    PadicScalar xpow = x;
    int m = x.valuation();
    double logp = std::log(static_cast<double>(pp.p));
    for (unsigned j = 1;; ++j) {
        // Every term with index j' >= j has valuation >= j'*m - log_p(j'),
        // an increasing lower bound; once it clears prec we may truncate.
        if (j > 1 && static_cast<double>(j) * m - std::log(static_cast<double>(j)) / logp >=
                         static_cast<double>(prec))
            break;
        PadicScalar term = xpow / PadicScalar::from_int(pp, static_cast<i64>(j));
        if ((j & 1) == 0) term = -term;
        sum = sum + term;
        xpow = xpow * x;
        if (xpow.is_zero()) break;
    }
    return sum;
}

CycValue CycValue::from_root(u64 p, const RootOfUnity& r, i64 coef) {
    CycValue v{p, r.order, {}};
    if (coef != 0) v.coeffs[r.exponent] = coef;
    return v;
}

CycValue CycValue::lifted_to(u64 new_order) const {
    if (new_order == order) return *this;
    if (new_order % order != 0)
        throw domain_error("CycValue: incompatible orders");
    u64 f = new_order / order;
    CycValue r{p, new_order, {}};
    for (auto& [e, c] : coeffs) r.coeffs[e * f] = c;
    return r;
}

CycValue CycValue::operator+(const CycValue& o) const {
    u64 ord = std::max(order, o.order);
    CycValue a = lifted_to(ord), b = o.lifted_to(ord);
    for (auto& [e, c] : b.coeffs) {
        auto it = a.coeffs.find(e);
        if (it == a.coeffs.end()) a.coeffs[e] = c;
        else if ((it->second += c) == 0) a.coeffs.erase(it);
    }
    return a;
}

CycValue CycValue::operator-() const {
    CycValue r = *this;
    for (auto& [e, c] : r.coeffs) c = -c;
    return r;
}

CycValue CycValue::operator-(const CycValue& o) const { return *this + (-o); }

CycValue CycValue::operator*(const CycValue& o) const {
    u64 ord = std::max(order, o.order);
    CycValue a = lifted_to(ord), b = o.lifted_to(ord);
    CycValue r{p, ord, {}};
    for (auto& [e1, c1] : a.coeffs)
        for (auto& [e2, c2] : b.coeffs) {
            u64 e = (e1 + e2) % ord;
            auto it = r.coeffs.find(e);
            if (it == r.coeffs.end()) r.coeffs[e] = c1 * c2;
            else if ((it->second += c1 * c2) == 0) r.coeffs.erase(it);
        }
    return r;
}

CycValue CycValue::operator*(i64 s) const {
    if (s == 0) return zero(p);
    CycValue r = *this;
    for (auto& [e, c] : r.coeffs) c *= s;
    return r;
}

void CycValue::add_root(const RootOfUnity& r, i64 coef) {
    if (coef == 0) return;
    if (r.order > order) {
        *this = lifted_to(r.order);
    }
    u64 e = r.exponent * (order / r.order);
    auto it = coeffs.find(e);
    if (it == coeffs.end()) coeffs[e] = coef;
    else if ((it->second += coef) == 0) coeffs.erase(it);
}

CycValue CycValue::normalized() const {
    // Reduce to the standard power basis of Z[zeta_{p^M}]: exponents
    // 0 <= e < phi(p^M).  The minimal polynomial gives, for
    // e = (p-1)*p^(M-1) + r with 0 <= r < p^(M-1):
    //   zeta^e = -sum_{j=0}^{p-2} zeta^(j*p^(M-1) + r).
    CycValue v = *this;
    // First drop zero coefficients and the trivial order-1 case.
    for (auto it = v.coeffs.begin(); it != v.coeffs.end();) {
        if (it->second == 0) it = v.coeffs.erase(it);
        else ++it;
    }
    if (v.order == 1) return v;
    u64 pm1 = v.order / v.p;          // p^(M-1)
    u64 phi = v.order - pm1;          // phi(p^M)
    // Exponents are already < order, and a reduction lands at
    // j*p^(M-1) + r <= (p-1)p^(M-1) - 1 < phi, so one pass suffices.
    auto it = v.coeffs.lower_bound(phi);
    std::vector<std::pair<u64, i64>> tail(it, v.coeffs.end());
    v.coeffs.erase(it, v.coeffs.end());
    for (auto& [e, c] : tail) {
        u64 r = e - phi;  // e = (p-1)p^(M-1) + r
        for (u64 j = 0; j + 1 < v.p; ++j) {
            u64 e2 = j * pm1 + r;
            auto jt = v.coeffs.find(e2);
            if (jt == v.coeffs.end()) v.coeffs[e2] = -c;
            else if ((jt->second += -c) == 0) v.coeffs.erase(jt);
        }
    }
    return v;
}

bool CycValue::is_zero() const { return normalized().coeffs.empty(); }

std::complex<double> CycValue::float_shadow() const {
    std::complex<double> s = 0.0;
    for (auto& [e, c] : coeffs) {
        double t = 2.0 * std::numbers::pi * static_cast<double>(e) /
                   static_cast<double>(order);
        s += static_cast<double>(c) * std::complex<double>(std::cos(t), std::sin(t));
    }
    return s;
}

double CycValue::shadow_error_bound() const {
    double mass = 0.0;
    for (auto& [e, c] : coeffs) mass += std::abs(static_cast<double>(c));
    // Each term carries a few ulp from cos/sin plus the accumulation error.
    return mass * 1e-15 * (2.0 + static_cast<double>(coeffs.size()));
}

std::string CycValue::to_json() const {
    CycValue v = normalized();
    std::ostringstream os;
    os << "{\"order\":" << v.order << ",\"coeffs\":[";
    bool first = true;
    for (auto& [e, c] : v.coeffs) {
        if (!first) os << ",";
        first = false;
        os << "[" << e << "," << c << "]";
    }
    os << "]}";
    return os.str();
}

CycValue cyc_normalize(const CycValue& v) { return v.normalized(); }

}  // namespace gkl
