#include "quad.hpp"

#include <cmath>
#include <sstream>

namespace gkl {

const char* kind_name(AlgKind k) {
    switch (k) {
        case AlgKind::split: return "split";
        case AlgKind::inert: return "inert";
        case AlgKind::ramified: return "ramified";
    }
    return "?";
}

AlgKind kind_from_name(const std::string& s) {
    if (s == "split") return AlgKind::split;
    if (s == "inert") return AlgKind::inert;
    if (s == "ramified") return AlgKind::ramified;
    throw domain_error("unknown algebra kind: " + s);
}

u64 EtaleQuadratic::smallest_nonresidue(u64 p) {
    for (u64 r = 2; r < p; ++r) {
        if (powmod(r, (p - 1) / 2, p) == p - 1) return r;
    }
    throw domain_error("no quadratic non-residue found (p not an odd prime?)");
}

EtaleQuadratic EtaleQuadratic::make(const PrimePower& pp, AlgKind kind,
                                    bool ramified_twist) {
    EtaleQuadratic a;
    a.pp = pp;
    a.kind = kind;
    switch (kind) {
        case AlgKind::split:
            a.D = PadicScalar::make_zero(pp);
            break;
        case AlgKind::inert:
            a.D = PadicScalar::from_int(pp, static_cast<i64>(smallest_nonresidue(pp.p)));
            break;
        case AlgKind::ramified: {
            u64 r = ramified_twist ? smallest_nonresidue(pp.p) : 1;
            a.D = PadicScalar::make(pp, 1, r);
            break;
        }
    }
    return a;
}

std::string EtaleQuadratic::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << pp.p << ",\"kind\":\"" << kind_name(kind) << "\",\"D\":";
    if (kind == AlgKind::split) os << "null";
    else os << "\"" << D.str() << "\"";
    os << "}";
    return os.str();
}

QuadElement QuadElement::make(const EtaleQuadratic& alg, const PadicScalar& x,
                              const PadicScalar& y) {
    QuadElement z;
    z.alg = alg;
    z.x = x;
    z.y = y;
    return z;
}

QuadElement QuadElement::from_scalar(const EtaleQuadratic& alg, const PadicScalar& f) {
    if (alg.kind == AlgKind::split) return make(alg, f, f);
    return make(alg, f, PadicScalar::make_zero(alg.pp));
}

QuadElement QuadElement::one(const EtaleQuadratic& alg) {
    return from_scalar(alg, PadicScalar::from_int(alg.pp, 1));
}

bool QuadElement::is_zero() const { return x.is_zero() && y.is_zero(); }

bool QuadElement::is_invertible() const {
    if (alg.kind == AlgKind::split) return !x.is_zero() && !y.is_zero();
    return !is_zero();
}

QuadElement QuadElement::operator+(const QuadElement& o) const {
    return make(alg, x + o.x, y + o.y);
}

QuadElement QuadElement::operator-(const QuadElement& o) const {
    return make(alg, x - o.x, y - o.y);
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
    if (alg.kind == AlgKind::split)
        return make(alg, x * o.x, y * o.y);
    // (x1 + y1 rD)(x2 + y2 rD) = x1x2 + D y1y2 + (x1y2 + y1x2) rD
    return make(alg, x * o.x + alg.D * (y * o.y), x * o.y + y * o.x);
}

QuadElement QuadElement::conj() const {
    if (alg.kind == AlgKind::split) return make(alg, y, x);
    return make(alg, x, -y);
}

PadicScalar QuadElement::norm() const {
    if (alg.kind == AlgKind::split) return x * y;
    return x * x - alg.D * (y * y);
}

PadicScalar QuadElement::trace() const {
    if (alg.kind == AlgKind::split) return x + y;
    return x + x;
}

QuadElement QuadElement::inverse() const {
    if (!is_invertible()) throw domain_error("QuadElement: not invertible");
    if (alg.kind == AlgKind::split)
        return make(alg, x.inverse(), y.inverse());
    PadicScalar n = norm();
    if (n.is_zero()) throw domain_error("QuadElement: norm vanishes at this precision");
    QuadElement c = conj();
    PadicScalar ninv = n.inverse();
    return make(alg, c.x * ninv, c.y * ninv);
}

QuadElement QuadElement::operator/(const QuadElement& o) const {
    return *this * o.inverse();
}

int QuadElement::v_L() const {
    if (is_zero()) throw domain_error("v_L of zero");
    switch (alg.kind) {
        case AlgKind::split:
        case AlgKind::inert: {
            if (x.is_zero()) return y.valuation();
            if (y.is_zero()) return x.valuation();
            return std::min(x.valuation(), y.valuation());
        }
        case AlgKind::ramified:
            // v_L through the norm avoids choosing pi_L coordinates.
            return norm().valuation();
    }
    throw domain_error("v_L: bad kind");
}

bool QuadElement::in_UL(unsigned n) const {
    if (n == 0) {
        // O_L^x membership.
        if (alg.kind == AlgKind::split)
            return !x.is_zero() && !y.is_zero() && x.valuation() == 0 &&
                   y.valuation() == 0;
        if (is_zero()) return false;
        if (alg.kind == AlgKind::inert)
            return v_L() == 0 && (x.is_zero() || x.valuation() >= 0) &&
                   (y.is_zero() || y.valuation() >= 0);
        // ramified: integral with unit norm
        return (x.is_zero() || x.valuation() >= 0) &&
               (y.is_zero() || y.valuation() >= 0) && v_L() == 0;
    }
    QuadElement w = *this - one(alg);
    auto vx_ge = [&](int b) { return w.x.is_zero() || w.x.valuation() >= b; };
    auto vy_ge = [&](int b) { return w.y.is_zero() || w.y.valuation() >= b; };
    switch (alg.kind) {
        case AlgKind::split:
        case AlgKind::inert:
            return vx_ge(static_cast<int>(n)) && vy_ge(static_cast<int>(n));
        case AlgKind::ramified: {
            // pi_L^(2m) O_L = p^m O_L;  pi_L^(2m+1) O_L = {c + a rD : v(c) >= m+1, v(a) >= m}
            int m = static_cast<int>(n / 2);
            if (n % 2 == 0) return vx_ge(m) && vy_ge(m);
            return vx_ge(m + 1) && vy_ge(m);
        }
    }
    return false;
}

bool QuadElement::operator==(const QuadElement& o) const {
    return x == o.x && y == o.y;
}

PadicScalar norm(const QuadElement& z) { return z.norm(); }

ZU1Factorization in_ZU1(const QuadElement& z) {
    if (!z.is_invertible()) throw domain_error("in_ZU1: element not invertible");
    ZU1Factorization r;
    const EtaleQuadratic& alg = z.alg;
    if (alg.kind == AlgKind::split) {
        // z = f*(1+pc, 1+pd)  <=>  y/x in U_F(1).
        PadicScalar q = z.y / z.x;
        PadicScalar d = q - PadicScalar::from_int(alg.pp, 1);
        bool ok = q.valuation() == 0 && (d.is_zero() || d.valuation() >= 1);
        if (!ok) { r.member = false; return r; }
        r.member = true;
        r.f = z.x;
        r.v = QuadElement::make(alg, PadicScalar::from_int(alg.pp, 1), q);
        return r;
    }
    // Field cases: z = x + y sqrt(D).  Candidates must have x != 0 and the
    // sqrt(D)-part subordinate: v(y) > v(x) (inert) / v(y) >= v(x) (ramified).
    if (z.x.is_zero()) { r.member = false; return r; }
    if (!z.y.is_zero()) {
        int dv = z.y.valuation() - z.x.valuation();
        bool ok = (alg.kind == AlgKind::inert) ? dv >= 1 : dv >= 0;
        if (!ok) { r.member = false; return r; }
    }
    r.member = true;
    r.f = z.x;
    PadicScalar w = z.y.is_zero() ? PadicScalar::make_zero(alg.pp) : z.y / z.x;
    r.v = QuadElement::make(alg, PadicScalar::from_int(alg.pp, 1), w);
    return r;
}

RootOfUnity psi_L(const QuadElement& z) { return psi_p(z.trace()); }

QuadElement log_L(const QuadElement& u, unsigned prec) {
    const EtaleQuadratic& alg = u.alg;
    if (!u.in_UL(1)) throw domain_error("log_L: argument not in U_L(1)");
    QuadElement w = u - QuadElement::one(alg);
    QuadElement sum = QuadElement::make(alg, PadicScalar::make_zero(alg.pp),
                                        PadicScalar::make_zero(alg.pp));
    if (w.is_zero()) return sum;
    int vw = w.v_L();
    double eL = static_cast<double>(alg.e_L());
    double logp = std::log(static_cast<double>(alg.pp.p));
    QuadElement wpow = w;
    for (unsigned j = 1;; ++j) {
        // Term valuation in v_F units is >= j*v_L(w)/e_L - log_p(j),
        // increasing in j.
        if (j > 1 && static_cast<double>(j) * vw / eL -
                             std::log(static_cast<double>(j)) / logp >=
                         static_cast<double>(prec))
            break;
        PadicScalar jinv = PadicScalar::from_int(alg.pp, static_cast<i64>(j)).inverse();
        if ((j & 1) == 0) jinv = -jinv;
        sum = sum + wpow * QuadElement::from_scalar(alg, jinv);
        wpow = wpow * w;
        if (wpow.is_zero()) break;
    }
    return sum;
}

}  // namespace gkl
