#include "characters.hpp"

#include <numbers>
#include <sstream>

namespace gkl {

CharValue CharValue::mul(const CharValue& o) const {
    CharValue r;
    r.wild = wild * o.wild;
    r.tame_den = std::max(tame_den, o.tame_den);
    u64 n1 = tame_num * (r.tame_den / tame_den);
    u64 n2 = o.tame_num * (r.tame_den / o.tame_den);
    r.tame_num = (n1 + n2) % r.tame_den;
    return r;
}

CharValue CharValue::inverse_of_root() const {
    if (wild.coeffs.size() != 1 || wild.coeffs.begin()->second != 1)
        throw domain_error("CharValue::inverse_of_root: not a unit root");
    CharValue r;
    u64 e = wild.coeffs.begin()->first;
    CycValue w = CycValue::zero(wild.p);
    w.order = wild.order;
    w.coeffs[(wild.order - e) % wild.order] = 1;
    r.wild = w;
    r.tame_den = tame_den;
    r.tame_num = (tame_den - tame_num) % tame_den;
    return r;
}

std::complex<double> CharValue::to_complex() const {
    std::complex<double> t = 1.0;
    if (tame_den > 1) {
        double a = 2.0 * std::numbers::pi * static_cast<double>(tame_num) /
                   static_cast<double>(tame_den);
        t = {std::cos(a), std::sin(a)};
    }
    return wild.float_shadow() * t;
}

ThetaChar ThetaChar::make(const EtaleQuadratic& alg, unsigned cond, u64 alpha0,
                          u64 tame_exp, int sign) {
    ThetaChar t;
    t.alg = alg;
    t.cond = cond;
    if (cond % alg.e_L() != 0)
        throw domain_error("ThetaChar: conductor must be a multiple of e_L");
    if (t.i0() < 2) throw domain_error("ThetaChar: i0 = c(theta)/e_L must be >= 2");
    u64 mod = 1;
    for (unsigned i = 0; i < t.i0(); ++i) mod *= alg.pp.p;
    t.alpha0 = alpha0 % mod;
    if (t.alpha0 % alg.pp.p == 0) throw domain_error("ThetaChar: alpha0 must be a unit");
    t.tame_exp = (alg.kind == AlgKind::split) ? tame_exp % (alg.pp.p - 1) : 0;
    t.sign = (sign >= 0) ? 1 : -1;
    return t;
}

QuadElement ThetaChar::alpha_theta() const {
    if (alg.kind == AlgKind::split)
        throw domain_error("alpha_theta: field cases only");
    const PrimePower& pp = alg.pp;
    PadicScalar a0 = PadicScalar::make(pp, 0, alpha0);
    PadicScalar y;
    if (alg.kind == AlgKind::inert) {
        // alpha0/(p^i0 sqrt(D)) = (alpha0/(p^i0 D)) sqrt(D)
        y = a0.shift(-static_cast<int>(i0())) / alg.D;
    } else {
        // alpha0/(sqrt(D)^(2 i0) sqrt(D)) = (alpha0/D^(i0+1)) sqrt(D)
        PadicScalar den = PadicScalar::from_int(pp, 1);
        for (unsigned i = 0; i <= i0(); ++i) den = den * alg.D;
        y = a0 / den;
    }
    return QuadElement::make(alg, PadicScalar::make_zero(pp), y);
}

ThetaChar ThetaChar::conjugated() const {
    ThetaChar t = *this;
    u64 mod = 1;
    for (unsigned i = 0; i < i0(); ++i) mod *= alg.pp.p;
    t.alpha0 = (mod - alpha0 % mod) % mod;
    if (alg.kind == AlgKind::split)
        t.tame_exp = (alg.pp.p - 1 - tame_exp) % (alg.pp.p - 1);
    return t;
}

std::string ThetaChar::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << alg.pp.p << ",\"kind\":\"" << kind_name(alg.kind)
       << "\",\"D\":";
    if (alg.kind == AlgKind::split) os << "null";
    else os << "\"" << alg.D.str() << "\"";
    os << ",\"cond\":" << cond << ",\"alpha0\":" << alpha0
       << ",\"tame_exp\":" << tame_exp << ",\"sign\":" << sign << "}";
    return os.str();
}

u64 teichmuller(u64 a, const PrimePower& pp) {
    a %= pp.modulus;
    if (a % pp.p == 0) throw domain_error("teichmuller: not a unit");
    u64 x = a;
    for (unsigned i = 0; i <= pp.n; ++i) x = powmod(x, pp.p, pp.modulus);
    return x;
}

u64 generator_mod_p(u64 p) {
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        // g generates iff g^((p-1)/q) != 1 for every prime q | p-1.
        u64 m = p - 1;
        for (u64 q = 2; q * q <= m; ++q) {
            if (m % q) continue;
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
            while (m % q == 0) m /= q;
        }
        if (ok && m > 1 && powmod(g, (p - 1) / m, p) == 1) ok = false;
        if (ok) return g;
    }
    throw domain_error("no generator mod p");
}

u64 dlog_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw domain_error("dlog of 0");
    u64 g = generator_mod_p(p), x = 1;
    for (u64 k = 0; k < p - 1; ++k) {
        if (x == a) return k;
        x = mulmod(x, g, p);
    }
    throw domain_error("dlog: not found");
}

CharValue eval_chi1(const ThetaChar& theta, const PadicScalar& t) {
    if (theta.alg.kind != AlgKind::split)
        throw domain_error("eval_chi1: split characters only");
    if (t.is_zero()) throw domain_error("eval_chi1: zero argument");
    const PrimePower& pp = theta.alg.pp;
    u64 p = pp.p;
    u64 u = t.unit % pp.modulus;  // chi1(p) := 1, so only the unit part counts
    CharValue r;
    r.tame_den = p - 1;
    r.tame_num = (theta.tame_exp % (p - 1)) * dlog_mod_p(u % p, p) % (p - 1);
    // wild part: psi(alpha_chi1 * log<u>), <u> = u / omega(u)
    u64 tu = teichmuller(u, pp);
    PadicScalar angle = PadicScalar::make(pp, 0, mulmod(u, inv_mod(tu, pp), pp.modulus));
    PadicScalar lg = padic_log(angle, pp.n);
    PadicScalar alpha = PadicScalar::make(pp, -static_cast<int>(theta.i0()), theta.alpha0);
    r.wild = CycValue::from_root(p, psi_p(alpha * lg));
    return r;
}

CharValue eval_theta(const ThetaChar& theta, const QuadElement& z) {
    const PrimePower& pp = theta.alg.pp;
    if (theta.alg.kind == AlgKind::split) {
        if (!z.is_invertible()) throw domain_error("eval_theta: not invertible");
        // theta(a,b) = chi1(a) chi1^{-1}(b) = chi1(a/b)
        return eval_chi1(theta, z.x / z.y);
    }
    ZU1Factorization f = in_ZU1(z);
    if (!f.member)
        throw domain_error(
            "eval_theta: tame data unavailable (z outside F^x U_L(1))");
    QuadElement w = log_L(f.v, pp.n);
    RootOfUnity r = psi_L(theta.alpha_theta() * w);
    CharValue cv;
    cv.wild = CycValue::from_root(pp.p, r);
    return cv;
}

u64 family_index(const ThetaChar& theta, unsigned n, unsigned m) {
    if (m > n || n >= theta.i0())
        throw domain_error("family_index: need 0 <= m <= n < i0");
    if (m == n) return 1;
    u64 p = theta.p();
    u64 first;
    switch (theta.alg.kind) {
        case AlgKind::split: first = p - 1; break;
        case AlgKind::inert: first = p + 1; break;
        case AlgKind::ramified: first = p; break;
        default: throw domain_error("family_index: bad kind");
    }
    u64 idx = 1;
    for (unsigned r = m + 1; r <= n; ++r) idx *= (r == 1) ? first : p;
    return idx;
}

std::vector<ThetaChar> alpha_family(const ThetaChar& theta, unsigned n, unsigned j) {
    if (j > n || n >= theta.i0())
        throw domain_error("alpha_family: need 0 <= j <= n < i0");
    const u64 p = theta.p();
    const unsigned i0 = theta.i0();
    u64 mod = 1;
    for (unsigned i = 0; i < i0; ++i) mod *= p;

    // Wild alpha-shifts: alpha' = alpha0*(1 + p^(i0-n)*s), distinct mod
    // U_F(i0-jw) with jw = max(j,1); s runs mod p^(n-jw).
    unsigned jw = std::max(j, 1u);
    u64 wild_count = 1;
    if (n >= jw)
        for (unsigned i = 0; i < n - jw; ++i) wild_count *= p;
    if (theta.alg.kind == AlgKind::ramified && j == 0) {
        // Pure-alpha classes all the way down: s mod p^n.
        wild_count = 1;
        for (unsigned i = 0; i < n; ++i) wild_count *= p;
    }
    u64 step = 1;
    for (unsigned i = 0; i < i0 - n; ++i) step *= p;

    std::vector<ThetaChar> out;
    for (u64 s = 0; s < wild_count; ++s) {
        ThetaChar t = theta;
        t.alpha0 = mulmod(theta.alpha0, (1 + mulmod(step % mod, s % mod, mod)) % mod, mod);
        if (j == 0 && theta.alg.kind == AlgKind::split) {
            for (u64 tw = 0; tw < p - 1; ++tw) {
                ThetaChar tt = t;
                tt.tame_exp = (theta.tame_exp + tw) % (p - 1);
                out.push_back(tt);
            }
        } else if (j == 0 && theta.alg.kind == AlgKind::inert) {
            // The p+1 classes at the last step differ by characters of
            // O_L^x/O_F^x U_L(1), invisible on the evaluation domain; they
            // are enumerated as labels.
            for (u64 lab = 0; lab < p + 1; ++lab) {
                ThetaChar tt = t;
                tt.tame_label = lab;
                out.push_back(tt);
            }
        } else {
            out.push_back(t);
        }
    }
    if (out.size() != family_index(theta, n, j))
        throw domain_error("alpha_family: enumeration size mismatch");
    return out;
}

namespace {

CycValue divide_exact(const CycValue& v, i64 d) {
    CycValue r = v.normalized();
    for (auto& [e, c] : r.coeffs) {
        if (c % d != 0)
            throw domain_error("family_average: sum not divisible by index");
        c /= d;
    }
    return r;
}

}  // namespace

bool in_ZUn(const QuadElement& x, unsigned n) {
    if (!x.is_invertible()) throw domain_error("in_ZUn: not invertible");
    const EtaleQuadratic& alg = x.alg;
    if (n == 0) return true;  // units: O_F^x U_L(0) = O_L^x
    switch (alg.kind) {
        case AlgKind::split: {
            PadicScalar q = x.x / x.y;
            if (q.valuation() != 0) return false;
            PadicScalar d = q - PadicScalar::from_int(alg.pp, 1);
            return d.is_zero() || d.valuation() >= static_cast<int>(n);
        }
        case AlgKind::inert: {
            if (x.x.is_zero()) return false;
            if (x.y.is_zero()) return true;
            return x.y.valuation() - x.x.valuation() >= static_cast<int>(n);
        }
        case AlgKind::ramified: {
            if (x.x.is_zero()) return false;
            if (x.y.is_zero()) return true;
            return x.y.valuation() - x.x.valuation() >= static_cast<int>(n / 2);
        }
    }
    return false;
}

CharValue family_average(const ThetaChar& theta, unsigned j, const QuadElement& x) {
    if (j < 1 || j >= theta.i0())
        throw domain_error("family_average: need 1 <= j < i0");
    if (!x.in_UL(0)) throw domain_error("family_average: x must be a unit of O_L");
    const u64 p = theta.p();
    u64 index = family_index(theta, j, 0);

    if (theta.alg.kind == AlgKind::split) {
        PadicScalar q = x.x / x.y;
        u64 d = dlog_mod_p(q.unit % p, p);
        if (d % (p - 1) != 0) {
            // The tame-twist sum over all p-1 twists vanishes exactly.
            CharValue z;
            z.wild = CycValue::zero(p);
            return z;
        }
        // Tame factors are all 1; sum the wild shifts (p^(j-1) classes),
        // with multiplicity p-1 from the tame twists.
        CycValue total = CycValue::zero(p);
        for (const ThetaChar& t : alpha_family(theta, j, 1))
            total = total + eval_chi1(t, q).wild;
        CharValue r;
        r.wild = divide_exact(total, static_cast<i64>(index / (p - 1)));
        return r;
    }

    // Inert: the p+1 tame labels evaluate identically on Z U_L(1), so sum
    // the p^(j-1) wild classes and cancel the multiplicity p+1 against the
    // index.  Ramified: theta[j]/~_0 is p^j pure-alpha classes.
    std::vector<ThetaChar> reps =
        (theta.alg.kind == AlgKind::ramified) ? alpha_family(theta, j, 0)
                                              : alpha_family(theta, j, 1);
    u64 mult = index / reps.size();
    CycValue total = CycValue::zero(p);
    for (const ThetaChar& t : reps) total = total + eval_theta(t, x).wild;
    CharValue r;
    r.wild = divide_exact(total, static_cast<i64>(index / mult));
    return r;
}

}  // namespace gkl
