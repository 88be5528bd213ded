#include "dualsum.hpp"

#include <cmath>

#include "parallel.hpp"

namespace gkl {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::complex<double> unit_circle(u64 num, u64 den) {
    double ang = kTau * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

u64 pow_u64(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

u64 mod_pk(i64 x, u64 pk) {
    i64 r = x % static_cast<i64>(pk);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(pk) : r);
}

}  // namespace

WhittakerProfile whittaker_profile(const ThetaChar& theta, i64 m2, unsigned k,
                                   u64 mu_unit) {
    if (k <= theta.i0())
        throw domain_error("whittaker_profile: profile undefined in this range");
    if (theta.alg.kind == AlgKind::split)
        throw domain_error(
            "whittaker_profile: the chi1^{-1}(m1 m2 mu) prefactor is undefined "
            "on the m = 0 slice; field cases only");
    WhittakerProfile prof;
    prof.theta = theta;
    prof.m2 = m2;
    prof.k = k;
    prof.mu_unit = mu_unit;
    prof.pk = pow_u64(theta.p(), k);

    GpKernel kernel(theta, k);
    prof.gp_slice.resize(prof.pk);
    for (u64 m = 0; m < prof.pk; ++m)
        prof.gp_slice[m] =
            kernel.eval(static_cast<i64>(m), m2, mu_unit, 0, GpMode::brute).z;

    prof.F.assign(prof.pk, {0.0, 0.0});
    const double scale = 1.0 / static_cast<double>(prof.pk);
    auto chunk = [&](u64 begin, u64 end) {
        for (u64 u = begin; u < end; ++u) {
            std::complex<double> s{0.0, 0.0};
            for (u64 m = 0; m < prof.pk; ++m)
                s += prof.gp_slice[m] * unit_circle(mulmod(m, u, prof.pk), prof.pk);
            prof.F[u] = s * scale;
        }
        return 0;
    };
    parallel_reduce<int>(prof.pk, 0, chunk, [](int x, int) { return x; });
    return prof;
}

std::complex<double> profile_forward(const WhittakerProfile& prof, i64 m1) {
    const u64 pk = prof.pk;
    u64 m = mod_pk(m1, pk);
    std::complex<double> s{0.0, 0.0};
    for (u64 u = 0; u < pk; ++u)
        s += prof.F[u] * unit_circle((pk - mulmod(m, u, pk)) % pk, pk);
    return s;
}

std::complex<double> gtilde(const WhittakerProfile& prof, i64 m1, i64 ell) {
    const u64 p = prof.theta.p();
    const u64 pk = prof.pk;
    if (mod_pk(ell, p) == 0)
        throw domain_error("gtilde: ell must be coprime to p");
    u64 lm = mulmod(mod_pk(ell, pk), mod_pk(m1, pk), pk);
    PrimePower ppk(p, prof.k);
    std::complex<double> s{0.0, 0.0};
    for (u64 u = 1; u < pk; ++u) {
        if (u % p == 0) continue;
        u64 ubar = inv_mod(u, ppk);
        s += prof.F[u] * unit_circle((pk - mulmod(lm, ubar, pk)) % pk, pk);
    }
    double inv_factor = 1.0 / (1.0 - 1.0 / static_cast<double>(p));
    return s * inv_factor;
}

SupportCheck gtilde_support(const WhittakerProfile& prof, i64 m1, i64 ell) {
    const u64 p = prof.theta.p();
    const u64 pk = prof.pk;
    const unsigned k = prof.k;
    const unsigned cpi = prof.theta.c_pi();
    SupportCheck chk;
    // v_p(m2 mu + ell m1 / p^{2k}) >= -c(pi) in mu-units reads
    // v_p(m2 mu_unit + ell m1) >= 2k - c(pi); at and beyond the Ramanujan
    // range k >= c(pi) the profile is a Ramanujan sum in m1 and the honest
    // support widens to v >= k - 1.
    chk.threshold = (k >= cpi) ? static_cast<int>(k) - 1
                               : 2 * static_cast<int>(k) - static_cast<int>(cpi);
    i64 t = static_cast<i64>(mulmod(mod_pk(prof.m2, pk), prof.mu_unit % pk, pk)) +
            static_cast<i64>(mulmod(mod_pk(ell, pk), mod_pk(m1, pk), pk));
    u64 tr = mod_pk(t, pk);
    int v = 0;
    if (tr == 0) {
        v = static_cast<int>(k);
    } else {
        while (tr % p == 0) { tr /= p; ++v; }
    }
    chk.v = v;
    chk.in_support = v >= chk.threshold;
    return chk;
}

double gtilde_bound_ratio(const WhittakerProfile& prof, std::complex<double> value) {
    double expo = (3.0 * prof.k - static_cast<double>(prof.theta.c_pi())) / 2.0;
    return std::abs(value) / std::pow(static_cast<double>(prof.theta.p()), expo);
}

std::complex<double> gtilde_ramanujan(const WhittakerProfile& prof, i64 m1,
                                      i64 ell) {
    const u64 p = prof.theta.p();
    const u64 pk = prof.pk;
    i64 a = -(static_cast<i64>(mulmod(mod_pk(prof.m2, pk), prof.mu_unit % pk, pk)) +
              static_cast<i64>(mulmod(mod_pk(ell, pk), mod_pk(m1, pk), pk)));
    double inv_factor = 1.0 / (1.0 - 1.0 / static_cast<double>(p));
    return ramanujan(a, p, prof.k).value * inv_factor;
}

}  // namespace gkl
