#include "genkl.hpp"

#include <cassert>
#include <cmath>

#include "parallel.hpp"

namespace gkl {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

u64 pow_u64(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

/// Exponent e mod p^k with psi_p(x) = e(e / p^k); requires v(x) >= -k.
u64 frac_exponent(const PadicScalar& x, unsigned k, u64 pk) {
    if (x.is_zero() || x.val >= 0) return 0;
    unsigned d = static_cast<unsigned>(-x.val);
    if (d > k) throw precision_error("frac_exponent: valuation below -k");
    return mulmod(x.unit % pk, pow_u64(x.pp.p, k - d), pk);
}

CycValue hist_to_cyc(u64 p, u64 pk, const std::map<u64, i64>& hist) {
    CycValue v{p, pk, {}};
    for (const auto& [e, c] : hist) {
        if (c) v.coeffs[e] += c;
    }
    return v.normalized();
}

bool cyc_divide_exact(CycValue& v, i64 n) {
    v = v.normalized();
    for (auto& [e, c] : v.coeffs) {
        if (c % n != 0) return false;
    }
    for (auto& [e, c] : v.coeffs) c /= n;
    return true;
}

ThetaChar at_precision(const ThetaChar& theta, unsigned prec) {
    PrimePower pp(theta.p(), prec);
    bool twist = theta.alg.kind == AlgKind::ramified && theta.alg.D.unit != 1;
    EtaleQuadratic alg = EtaleQuadratic::make(pp, theta.alg.kind, twist);
    ThetaChar out = ThetaChar::make(alg, theta.cond, theta.alpha0, theta.tame_exp,
                                    theta.sign);
    out.tame_label = theta.tame_label;
    return out;
}

}  // namespace

Constants constants(const ThetaChar& theta, unsigned l) {
    const u64 p = theta.p();
    Constants c;
    c.i0 = theta.i0();
    c.c_pi = theta.c_pi();
    c.l = l;
    const bool split = theta.alg.kind == AlgKind::split;
    c.l0 = (theta.alg.kind == AlgKind::inert) ? 1 : 0;
    if (l < c.l0 || l >= c.i0)
        throw domain_error("constants: need l0 <= l < i0");
    c.c0 = split ? pow_u64(p, c.i0) : pow_u64(p, c.i0 + 1);
    c.c_l = c.c0 * pow_u64(p, l - c.l0);
    c.index = family_index(theta, l, c.l0);
    c.CF_l0 = split ? (p + 1) * pow_u64(p, c.i0 - 1) : (p + 1) * pow_u64(p, c.i0);
    c.CF_l = c.CF_l0 * c.index;
    return c;
}

GpKernel::GpKernel(const ThetaChar& theta, unsigned k)
    : theta_(at_precision(theta, theta.cond + k + 2)), k_(k),
      pk_(pow_u64(theta.p(), k)) {
    roots_.resize(pk_);
    for (u64 j = 0; j < pk_; ++j) {
        double ang = kTau * static_cast<double>(j) / static_cast<double>(pk_);
        roots_[j] = {std::cos(ang), std::sin(ang)};
    }
    if (theta_.alg.kind == AlgKind::split)
        build_split_rows();
    else
        build_field_rows();
}

void GpKernel::build_field_rows() {
    const u64 p = theta_.p();
    const PrimePower& ppM = theta_.alg.pp;
    const QuadElement alpha = theta_.alpha_theta();
    const PadicScalar y = alpha.y;  // alpha_theta = y * sqrt(D)
    const PadicScalar D = theta_.alg.D;
    const PadicScalar S = y * y * D;  // alpha_theta^2, a scalar
    s_res_ = S.shift(2 * static_cast<int>(k_)).residue(k_);

    // theta(t2 + alpha) = psi(Tr(alpha * log(1 + alpha/t2))).  With
    // w = alpha/t2 = (y p^k / a) sqrt(D) only the odd powers of w contribute
    // to the trace, giving the scalar series
    //   Tr = sum_{j odd} 2 y^{j+1} D^{(j+1)/2} p^{jk} / j * a^{-j},
    // so the a-dependence is a short polynomial in a^{-1}.
    std::vector<std::pair<unsigned, PadicScalar>> series;  // (j, base_j)
    const double vy = y.valuation();
    const double vD = D.is_zero() ? 0 : D.valuation();
    const double logp = std::log(static_cast<double>(p));
    PadicScalar two = PadicScalar::from_int(ppM, 2);
    for (unsigned j = 1;; j += 2) {
        double lower = (j + 1) * vy + (j + 1) / 2.0 * vD +
                       static_cast<double>(j) * k_ -
                       std::log(static_cast<double>(j)) / logp;
        if (lower >= 0.0) break;
        PadicScalar base = two;
        for (unsigned t = 0; t < j + 1; ++t) base = base * y;
        for (unsigned t = 0; t < (j + 1) / 2; ++t) base = base * D;
        base = base.shift(static_cast<int>(j * k_)) /
               PadicScalar::from_int(ppM, static_cast<i64>(j));
        if (!base.is_zero() && base.valuation() < 0)
            series.emplace_back(j, base);
    }

    rows_.assign(pk_, Row{});
    const u64 n = pk_;
    parallel_reduce<int>(
        n, 0,
        [&](u64 begin, u64 end) {
            for (u64 a = begin; a < end; ++a) {
                if (a % p == 0) continue;
                Row& row = rows_[a];
                row.unit = true;
                const u64 ainv = inv_mod(a % ppM.modulus, ppM);
                PadicScalar t2 = PadicScalar::make(ppM, -static_cast<int>(k_), a);
                PadicScalar arg = t2;  // psi(t2) factor
                for (const auto& [j, base] : series) {
                    u64 aij = powmod(ainv, j, ppM.modulus);
                    arg = arg - base * PadicScalar::make(ppM, 0, aij);
                }
                row.e_static = frac_exponent(arg, k_, pk_);
                PadicScalar nm = t2 * t2 - S;
                PadicScalar q = t2 / nm;
                if (q.valuation() != static_cast<int>(k_))
                    throw precision_error("gp kernel: unexpected frequency valuation");
                row.f = q.unit % pk_;
                row.nres = (mulmod(a, a, pk_) + pk_ - s_res_) % pk_;
            }
            return 0;
        },
        [](int x, int) { return x; });
}

void GpKernel::build_split_rows() {
    const u64 p = theta_.p();
    const PrimePower& ppM = theta_.alg.pp;
    const unsigned i0 = theta_.i0();
    // Stationary congruence t2^2 + 2 alpha_chi1 t2 == m1 m2 mu reads, after
    // clearing p^{-2k}: a^2 + (2 alpha0 p^{k-i0}) a == m1 m2 mu_unit mod p^i.
    a_lin_ = (k_ >= i0)
                 ? mulmod(2 * theta_.alpha0 % pk_, pow_u64(p, k_ - i0), pk_)
                 : 0;

    rows_.assign(pk_, Row{});
    const u64 n = pk_;
    parallel_reduce<int>(
        n, 0,
        [&](u64 begin, u64 end) {
            for (u64 a = begin; a < end; ++a) {
                if (a % p == 0) continue;
                Row& row = rows_[a];
                row.unit = true;
                PadicScalar ua = PadicScalar::make(ppM, 0, a);
                CharValue chi = eval_chi1(theta_, ua);
                CharValue chi2 = chi.mul(chi);
                row.c = chi2.to_complex() * roots_[a];
                if (chi2.wild.coeffs.size() == 1)
                    row.chi_wild = chi2.wild.coeffs.begin()->first *
                                   (pk_ / chi2.wild.order);
                row.f = inv_mod(a, PrimePower(p, k_));
                row.nres = (mulmod(a, a, pk_) + mulmod(a_lin_, a, pk_)) % pk_;
            }
            return 0;
        },
        [](int x, int) { return x; });
}

std::vector<u64> GpKernel::sqrt_mod(u64 r, unsigned i) const {
    const u64 p = theta_.p();
    const u64 pi = pow_u64(p, i);
    r %= pi;
    if (r % p == 0) return {};  // degenerate; caller falls back to filtering
    u64 x = 0;
    bool found = false;
    for (u64 t = 1; t < p; ++t) {
        if (mulmod(t, t, p) == r % p) { x = t; found = true; break; }
    }
    if (!found) return {};
    // Hensel: lift one digit at a time (2x is a unit since p is odd).
    for (unsigned e = 1; e < i; ++e) {
        u64 pe = pow_u64(p, e);
        u64 pe1 = pe * p;
        u64 diff = (r % pe1 + pe1 - mulmod(x, x, pe1)) % pe1;
        u64 t = mulmod(diff / pe, inv_mod(2 * x % p, PrimePower(p, 1)), p);
        x = (x + t * pe) % pe1;
    }
    return {x, (pi - x) % pi};
}

GpValue GpKernel::eval_field(u64 m, unsigned depth, GpMode mode) const {
    const u64 p = theta_.p();
    GpValue out;
    std::map<u64, i64> hist;
    u64 terms = 0;

    if (mode == GpMode::stationary && k_ >= 2) {
        const unsigned i = k_ / 2;
        const u64 pi = pow_u64(p, i);
        u64 r = (m + s_res_) % pk_;
        auto roots = sqrt_mod(r, i);
        if (!roots.empty() || r % p != 0) {
            // Hensel path: a == +-a0 mod p^i (possibly no solution at all).
            const u64 step = pk_ / pi;
            for (u64 a0 : roots) {
                for (u64 t = 0; t < step; ++t) {
                    u64 a = (a0 + t * pi) % pk_;
                    const Row& row = rows_[a];
                    ++terms;
                    ++hist[(row.e_static + mulmod(m, row.f, pk_)) % pk_];
                }
            }
            out.exact = hist_to_cyc(p, pk_, hist);
            out.has_exact = true;
            out.z = {0.0, 0.0};
            for (const auto& [e, c] : out.exact.coeffs)
                out.z += static_cast<double>(c) * roots_[e];
            out.terms = terms;
            return out;
        }
        // Degenerate congruence: fall back to filtering at the same depth.
        depth = i;
        mode = GpMode::brute;
    }

    const unsigned i = depth;
    const u64 pi = pow_u64(p, i);
    std::vector<i64> flat(pk_, 0);
    u64 local = 0;
    if (thread_count() <= 1) {
        for (u64 a = 0; a < pk_; ++a) {
            const Row& row = rows_[a];
            if (!row.unit) continue;
            if (i > 0 && (row.nres + pi - m % pi) % pi != 0) continue;
            ++local;
            ++flat[(row.e_static + mulmod(m, row.f, pk_)) % pk_];
        }
    } else {
        auto chunk = [&](u64 begin, u64 end) {
            std::map<u64, i64> h;
            u64 n = 0;
            for (u64 a = begin; a < end; ++a) {
                const Row& row = rows_[a];
                if (!row.unit) continue;
                if (i > 0 && (row.nres + pi - m % pi) % pi != 0) continue;
                ++n;
                ++h[(row.e_static + mulmod(m, row.f, pk_)) % pk_];
            }
            return std::make_pair(std::move(h), n);
        };
        auto comb = [](std::pair<std::map<u64, i64>, u64> x,
                       std::pair<std::map<u64, i64>, u64> y) {
            for (const auto& [e, c] : y.first) x.first[e] += c;
            x.second += y.second;
            return x;
        };
        auto [h, n] = parallel_reduce<std::pair<std::map<u64, i64>, u64>>(
            pk_, {}, chunk, comb);
        for (const auto& [e, c] : h) flat[e] += c;
        local = n;
    }
    CycValue acc{p, pk_, {}};
    for (u64 e = 0; e < pk_; ++e)
        if (flat[e]) acc.coeffs[e] = flat[e];
    out.exact = acc.normalized();
    out.has_exact = true;
    out.z = {0.0, 0.0};
    for (const auto& [e, c] : out.exact.coeffs)
        out.z += static_cast<double>(c) * roots_[e];
    out.terms = local;
    return out;
}

GpValue GpKernel::eval_split(i64 m1, i64 m2, u64 mu_unit, unsigned depth,
                             GpMode mode, double chi1_p_frac) const {
    const u64 p = theta_.p();
    GpValue out;
    u64 am = mulmod(static_cast<u64>(std::llabs(m1)) % pk_,
                    static_cast<u64>(std::llabs(m2)) % pk_, pk_);
    u64 m = ((m1 < 0) != (m2 < 0)) ? (pk_ - am) % pk_ : am;
    u64 mm = mulmod(m, mu_unit % pk_, pk_);

    // Prefactor chi1^{-1}(m1 m2 mu), with the chi1(p) gauge tracked
    // explicitly: the p-power parts contribute phase^{v_p(m1 m2)} total and
    // cancel exactly for unit m1 m2.
    i64 prod = m1 * m2;
    if (prod == 0) throw domain_error("gp_principal: m1*m2 = 0");
    int vp = 0;
    i64 u = prod;
    while (u % static_cast<i64>(p) == 0) { u /= static_cast<i64>(p); ++vp; }
    const PrimePower& ppM = theta_.alg.pp;
    u64 ur = static_cast<u64>(((u % static_cast<i64>(ppM.modulus)) +
                               static_cast<i64>(ppM.modulus)) % ppM.modulus);
    CharValue chi_u = eval_chi1(theta_, PadicScalar::make(ppM, 0,
                                    mulmod(ur, mu_unit % ppM.modulus, ppM.modulus)));
    // Gauge phases: chi1^{-1}(mu-part and m-part p-powers) gives
    // phase^{-(vp - 2k)}, the row values carry phase^{-2k}; net phase^{-vp}.
    double gauge = -chi1_p_frac * kTau * static_cast<double>(vp);
    std::complex<double> pre =
        chi_u.inverse_of_root().to_complex() *
        std::complex<double>(std::cos(gauge), std::sin(gauge));

    // Fast path: complete the square with h = a_lin/2, then Hensel.
    std::vector<u64> touched;
    bool enumerated = false;
    unsigned i = depth;
    if (mode == GpMode::stationary && k_ >= 2) {
        i = k_ / 2;
        const u64 pi = pow_u64(p, i);
        u64 h = mulmod(a_lin_ % pk_, inv_mod(2, PrimePower(p, k_)), pk_);
        u64 r = (mm + mulmod(h, h, pk_)) % pk_;
        auto roots = sqrt_mod(r, i);
        if (!roots.empty() || r % p != 0) {
            enumerated = true;
            const u64 step = pk_ / pi;
            for (u64 b0 : roots) {
                for (u64 t = 0; t < step; ++t) {
                    u64 a = (b0 + t * pi + pk_ - h % pk_) % pk_;
                    if (a % p != 0) touched.push_back(a);
                }
            }
        }
        // else: degenerate; filter below at depth i.
    }

    std::complex<double> total{0.0, 0.0};
    u64 terms = 0;
    if (enumerated) {
        for (u64 a : touched) {
            const Row& row = rows_[a];
            total += row.c * roots_[mulmod(mm, row.f, pk_)];
        }
        terms = touched.size();
    } else {
        const u64 pi = pow_u64(p, i);
        auto chunk = [&](u64 begin, u64 end) {
            std::complex<double> s{0.0, 0.0};
            u64 local = 0;
            for (u64 a = begin; a < end; ++a) {
                const Row& row = rows_[a];
                if (!row.unit) continue;
                if (i > 0 && (row.nres + pi - mm % pi) % pi != 0) continue;
                ++local;
                s += row.c * roots_[mulmod(mm, row.f, pk_)];
            }
            return std::make_pair(s, local);
        };
        auto comb = [](std::pair<std::complex<double>, u64> x,
                       std::pair<std::complex<double>, u64> y) {
            return std::make_pair(x.first + y.first, x.second + y.second);
        };
        auto [s, local] = parallel_reduce<std::pair<std::complex<double>, u64>>(
            pk_, {}, chunk, comb);
        total = s;
        terms = local;
    }
    out.z = pre * total;
    out.terms = terms;
    return out;
}

std::vector<i64> GpKernel::eval_flat(i64 m1, i64 m2, u64 mu_unit,
                                     unsigned depth) const {
    if (theta_.alg.kind == AlgKind::split)
        throw domain_error("eval_flat: field cases only");
    const u64 p = theta_.p();
    u64 am = mulmod(static_cast<u64>(std::llabs(m1)) % pk_,
                    static_cast<u64>(std::llabs(m2)) % pk_, pk_);
    u64 mr = ((m1 < 0) != (m2 < 0)) ? (pk_ - am) % pk_ : am;
    u64 m = mulmod(mr, mu_unit % pk_, pk_);
    const u64 pi = pow_u64(p, depth);
    std::vector<i64> flat(pk_, 0);
    for (u64 a = 0; a < pk_; ++a) {
        const Row& row = rows_[a];
        if (!row.unit) continue;
        if (depth > 0 && (row.nres + pi - m % pi) % pi != 0) continue;
        ++flat[(row.e_static + mulmod(m, row.f, pk_)) % pk_];
    }
    // In-place power-basis reduction: zeta^{phi+r} = -sum_j zeta^{j p^{k-1}+r}.
    const u64 pk1 = pk_ / p;
    const u64 phi = pk_ - pk1;
    for (u64 e = phi; e < pk_; ++e) {
        i64 c = flat[e];
        if (!c) continue;
        flat[e] = 0;
        for (u64 j = 0; j < p - 1; ++j) flat[j * pk1 + (e - phi)] -= c;
    }
    return flat;
}

GpValue GpKernel::eval(i64 m1, i64 m2, u64 mu_unit, unsigned depth, GpMode mode,
                       double chi1_p_frac) const {
    if (depth > k_ / 2)
        throw domain_error("gp: depth exceeds floor(k/2)");
    if (theta_.alg.kind == AlgKind::split)
        return eval_split(m1, m2, mu_unit, depth, mode, chi1_p_frac);
    u64 am = mulmod(static_cast<u64>(std::llabs(m1)) % pk_,
                    static_cast<u64>(std::llabs(m2)) % pk_, pk_);
    u64 m = ((m1 < 0) != (m2 < 0)) ? (pk_ - am) % pk_ : am;
    return eval_field(mulmod(m, mu_unit % pk_, pk_), depth, mode);
}

GpValue gp_supercuspidal(const GpParams& params) {
    if (params.theta.alg.kind == AlgKind::split)
        throw domain_error("gp_supercuspidal: theta is split");
    GpValue out;
    if (params.k <= params.theta.i0()) {
        out.exact = CycValue::zero(params.theta.p());
        out.has_exact = true;
        out.reason = "outside support";
        return out;
    }
    GpKernel kernel(params.theta, params.k);
    return kernel.eval(params.m1, params.m2, params.mu_unit, params.depth,
                       params.mode);
}

GpValue gp_principal(const GpParams& params) {
    if (params.theta.alg.kind != AlgKind::split)
        throw domain_error("gp_principal: theta is not split");
    GpValue out;
    if (params.k < params.theta.i0()) {
        out.reason = "outside support";
        return out;
    }
    GpKernel kernel(params.theta, params.k);
    return kernel.eval(params.m1, params.m2, params.mu_unit, params.depth,
                       params.mode, params.chi1_p_frac);
}

GpValue gp(const GpParams& params) {
    return params.theta.alg.kind == AlgKind::split ? gp_principal(params)
                                                   : gp_supercuspidal(params);
}

GpValue gp_average(const ThetaChar& theta, unsigned l, i64 m1, i64 m2, unsigned k,
                   u64 mu_unit, unsigned depth) {
    Constants cst = constants(theta, l);
    std::vector<ThetaChar> reps = alpha_family(theta, l, cst.l0);
    const u64 index = family_index(theta, l, cst.l0);
    if (reps.size() != index)
        throw domain_error("gp_average: representative count mismatch");
    GpValue total;
    bool first = true;
    for (const ThetaChar& rep : reps) {
        GpParams params{rep, m1, m2, k, mu_unit, depth, GpMode::brute, 0.0};
        GpValue v = gp(params);
        if (first) {
            total = v;
            first = false;
        } else {
            total.z += v.z;
            total.terms += v.terms;
            if (total.has_exact && v.has_exact)
                total.exact = total.exact + v.exact;
            else
                total.has_exact = false;
        }
    }
    total.z /= static_cast<double>(index);
    if (total.has_exact) {
        if (!cyc_divide_exact(total.exact, static_cast<i64>(index)))
            total.has_exact = false;
        else
            total.z = total.exact.float_shadow();
    }
    return total;
}

u64 mu_unit_of_c(u64 c, u64 p, unsigned k) {
    u64 pk = pow_u64(p, k);
    u64 cp = c;
    for (unsigned t = 0; t < k; ++t) cp /= p;
    if (cp % p == 0) throw domain_error("mu_unit_of_c: k is not v_p(c)");
    return inv_mod(mulmod(cp % pk, cp % pk, pk), PrimePower(p, k));
}

GGlobalValue g_global(i64 m1, i64 m2, const ThetaChar& theta, unsigned l, u64 c) {
    Constants cst = constants(theta, l);
    GGlobalValue out;
    if (c % cst.c_l != 0) {
        out.reason = "c not divisible by c_l";
        return out;
    }
    const u64 p = theta.p();
    unsigned k = 0;
    u64 rest = c;
    while (rest % p == 0) { rest /= p; ++k; }
    GpParams params{theta, m1, m2, k, mu_unit_of_c(c, p, k), 0, GpMode::brute, 0.0};
    out.z = gp(params).z;
    const i64 c2 = static_cast<i64>(c) * static_cast<i64>(c);
    for (u64 q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        out.z *= kl_local(m1, m2, Rational::make(1, c2), q).value;
    }
    if (rest > 1)
        out.z *= kl_local(m1, m2, Rational::make(1, c2), rest).value;
    return out;
}

}  // namespace gkl
