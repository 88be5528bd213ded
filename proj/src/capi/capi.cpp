#include "gkl.h"

#include <chrono>
#include <cstring>
#include <sstream>
#include <string>

#include "bessel.hpp"
#include "dualsum.hpp"
#include "genkl.hpp"
#include "parallel.hpp"
#include "trace.hpp"
#include "verify.hpp"

using namespace gkl;

struct gkl_theta {
    ThetaChar theta;
    bool twist = false;
    u64 d_int = 0;  // D as a small integer, 0 for split (CSV column)
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

/// Run fn, translating exceptions into status codes.
template <class Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return GKL_OK;
    } catch (const domain_error& e) {
        return set_error(GKL_ERR_DOMAIN, e.what());
    } catch (const precision_error& e) {
        return set_error(GKL_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return set_error(GKL_ERR_DOMAIN, e.what());
    }
}

bool parse_mode(const char* mode, GpMode& out) {
    if (!mode || std::strcmp(mode, "brute") == 0) {
        out = GpMode::brute;
        return true;
    }
    if (std::strcmp(mode, "stationary") == 0) {
        out = GpMode::stationary;
        return true;
    }
    return false;
}

void fill_result(const GpValue& v, gkl_gp_result* out) {
    out->re = v.z.real();
    out->im = v.z.imag();
    out->abs = std::abs(v.z);
    out->terms = v.terms;
    out->has_exact = v.has_exact ? 1 : 0;
    out->zero_reason = v.reason ? 1 : 0;
}

u64 pow_u64(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

extern "C" {

const char* gkl_last_error(void) { return g_last_error.c_str(); }

void gkl_set_threads(unsigned n) { set_thread_count(n); }

void gkl_free_string(char* s) { delete[] s; }

gkl_theta* gkl_theta_new(uint64_t p, const char* kind, unsigned cond,
                         int ramified_twist, uint64_t alpha0,
                         uint64_t tame_exp) {
    try {
        if (!kind) {
            set_error(GKL_ERR_USAGE, "kind must be given");
            return nullptr;
        }
        AlgKind ak = kind_from_name(kind);
        PrimePower pp(p, cond + 12);
        EtaleQuadratic alg = EtaleQuadratic::make(pp, ak, ramified_twist != 0);
        auto* h = new gkl_theta;
        h->theta = ThetaChar::make(alg, cond, alpha0, tame_exp);
        h->twist = ramified_twist != 0;
        if (ak != AlgKind::split) {
            u64 d = alg.D.unit % pp.modulus;
            for (int t = 0; t < alg.D.val; ++t) d *= p;
            h->d_int = d % (p * p);  // D is p-small by construction
        }
        return h;
    } catch (const std::exception& e) {
        set_error(GKL_ERR_DOMAIN, e.what());
        return nullptr;
    }
}

void gkl_theta_free(gkl_theta* t) { delete t; }

int gkl_theta_json(const gkl_theta* t, char** out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] { *out = dup_string(t->theta.to_json()); });
}

int gkl_gp(const gkl_theta* t, int64_t m1, int64_t m2, unsigned k,
           uint64_t mu_unit, unsigned depth, const char* mode,
           gkl_gp_result* out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    GpMode gm;
    if (!parse_mode(mode, gm))
        return set_error(GKL_ERR_USAGE, "mode must be brute or stationary");
    return guarded([&] {
        GpParams params{t->theta, m1, m2, k, mu_unit, depth, gm, 0.0};
        fill_result(gp(params), out);
    });
}

int gkl_gp_average(const gkl_theta* t, unsigned l, int64_t m1, int64_t m2,
                   unsigned k, uint64_t mu_unit, gkl_gp_result* out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        fill_result(gp_average(t->theta, l, m1, m2, k, mu_unit), out);
    });
}

int gkl_g_global(const gkl_theta* t, unsigned l, int64_t m1, int64_t m2,
                 uint64_t c, gkl_gp_result* out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        GGlobalValue v = g_global(m1, m2, t->theta, l, c);
        out->re = v.z.real();
        out->im = v.z.imag();
        out->abs = std::abs(v.z);
        out->terms = 0;
        out->has_exact = 0;
        out->zero_reason = v.reason ? 1 : 0;
    });
}

int gkl_constants(const gkl_theta* t, unsigned l, gkl_constants_result* out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        Constants c = constants(t->theta, l);
        out->i0 = c.i0;
        out->c_pi = c.c_pi;
        out->l0 = c.l0;
        out->l = c.l;
        out->c0 = c.c0;
        out->c_l = c.c_l;
        out->index = c.index;
        out->CF_l0 = c.CF_l0;
        out->CF_l = c.CF_l;
    });
}

int gkl_kl_local(int64_t m1, int64_t m2, int64_t mu_num, int64_t mu_den,
                 uint64_t q, double* re, double* im) {
    if (!re || !im) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        KlResult r = kl_local(m1, m2, Rational::make(mu_num, mu_den), q);
        *re = r.value.real();
        *im = r.value.imag();
    });
}

double gkl_bessel_j(unsigned nu, double x) { return bessel_j(nu, x); }

int gkl_gp_table_csv(const gkl_theta* t, int64_t m1, int64_t m2, unsigned k,
                     uint64_t mu_unit, unsigned depth, const char* mode,
                     int grid_units, char** out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    GpMode gm;
    if (!parse_mode(mode, gm))
        return set_error(GKL_ERR_USAGE, "mode must be brute or stationary");
    return guarded([&] {
        const u64 p = t->theta.p();
        const char* mode_name = (gm == GpMode::brute) ? "brute" : "stationary";
        std::ostringstream csv;
        csv.precision(15);
        csv << "p,kind,D,cond,m1,m2,k,depth,re,im,abs,abs_over_sqrt,mode,"
               "wall_ns\n";
        GpKernel kernel(t->theta, k);
        auto emit = [&](i64 mm1) {
            auto t0 = std::chrono::steady_clock::now();
            GpValue v = kernel.eval(mm1, m2, mu_unit, depth, gm);
            auto t1 = std::chrono::steady_clock::now();
            double sq = std::abs(v.z) /
                        std::pow(static_cast<double>(p), k / 2.0);
            csv << p << ',' << kind_name(t->theta.alg.kind) << ',' << t->d_int
                << ',' << t->theta.cond << ',' << mm1 << ',' << m2 << ',' << k
                << ',' << depth << ',' << v.z.real() << ',' << v.z.imag()
                << ',' << std::abs(v.z) << ',' << sq << ',' << mode_name << ','
                << std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                       .count()
                << '\n';
        };
        if (grid_units) {
            const u64 pk = kernel.pk();
            for (u64 m = 1; m < pk; ++m)
                if (m % p) emit(static_cast<i64>(m));
        } else {
            emit(m1);
        }
        *out = dup_string(csv.str());
    });
}

int gkl_dualsum_csv(const gkl_theta* t, unsigned k, int64_t m2, int64_t ell,
                    int64_t m1, int grid, char** out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        const u64 p = t->theta.p();
        WhittakerProfile prof = whittaker_profile(t->theta, m2, k, 1);
        std::ostringstream csv;
        csv.precision(15);
        csv << "m1,in_support,re,im,abs,bound_ratio\n";
        auto emit = [&](i64 mm1) {
            std::complex<double> v = gtilde(prof, mm1, ell);
            SupportCheck chk = gtilde_support(prof, mm1, ell);
            csv << mm1 << ',' << (chk.in_support ? 1 : 0) << ',' << v.real()
                << ',' << v.imag() << ',' << std::abs(v) << ','
                << gtilde_bound_ratio(prof, v) << '\n';
        };
        if (grid) {
            for (u64 m = 1; m < prof.pk; ++m)
                if (m % p) emit(static_cast<i64>(m));
        } else {
            emit(m1);
        }
        *out = dup_string(csv.str());
    });
}

int gkl_trace_geometric_json(const gkl_theta* t, unsigned l, int64_t m1,
                             int64_t m2, unsigned kappa, uint64_t c_max,
                             char** out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        GeometricSide gs = geometric_side(t->theta, l, m1, m2, kappa, c_max);
        *out = dup_string(geometric_to_json(gs));
    });
}

int gkl_trace_residual_json(const gkl_theta* t, const char* data_path,
                            unsigned l, int64_t m1, int64_t m2, unsigned kappa,
                            uint64_t c_max, double gauge, char** out) {
    if (!t || !out || !data_path)
        return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        SpectralDataset ds = load_spectral(data_path);
        PeterssonResidual r =
            petersson_residual(ds, t->theta, l, m1, m2, kappa, c_max, gauge);
        Json j{{"lhs", r.lhs},
               {"rhs_re", r.rhs.real()},
               {"rhs_im", r.rhs.imag()},
               {"residual_re", r.residual.real()},
               {"residual_im", r.residual.imag()},
               {"residual_abs", std::abs(r.residual)},
               {"tail_bound", r.tail_bound},
               {"entries", ds.entries.size()}};
        *out = dup_string(j.dump(2));
    });
}

int gkl_verify_json(const char* suite, uint64_t p, const char* kind,
                    unsigned cond, unsigned l, unsigned k, unsigned n,
                    int twist, char** out) {
    if (!suite || !out) return set_error(GKL_ERR_USAGE, "null argument");
    std::string s = suite;
    AlgKind ak = AlgKind::inert;
    if (s != "orthogonality") {
        if (!kind) return set_error(GKL_ERR_USAGE, "kind must be given");
        try {
            ak = kind_from_name(kind);
        } catch (const std::exception& e) {
            return set_error(GKL_ERR_USAGE, e.what());
        }
    }
    Json rep;
    int rc = guarded([&] {
        if (s == "classical") rep = verify_classical(p, ak, cond, twist != 0);
        else if (s == "average") rep = verify_average(p, ak, cond, l);
        else if (s == "cancellation")
            rep = verify_cancellation(p, ak, cond, twist != 0);
        else if (s == "dualsum") rep = verify_dualsum(p, ak, cond, k, twist != 0);
        else if (s == "bijection") rep = verify_bijection(p, ak, cond, n);
        else if (s == "orthogonality") rep = verify_orthogonality(p, n);
        else throw domain_error("unknown suite");
    });
    if (rc != GKL_OK)
        return (std::string(gkl_last_error()) == "unknown suite")
                   ? set_error(GKL_ERR_USAGE, "unknown suite: " + s)
                   : rc;
    *out = dup_string(rep.dump(2));
    return GKL_OK;
}

int gkl_bench_json(const gkl_theta* t, unsigned k, int64_t m1, int64_t m2,
                   char** out) {
    if (!t || !out) return set_error(GKL_ERR_USAGE, "null argument");
    return guarded([&] {
        using clock = std::chrono::steady_clock;
        auto ns = [](clock::time_point a, clock::time_point b) {
            return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a)
                .count();
        };
        auto t0 = clock::now();
        GpKernel kernel(t->theta, k);
        auto t1 = clock::now();
        GpValue brute = kernel.eval(m1, m2, 1, 0, GpMode::brute);
        auto t2 = clock::now();
        GpValue fast = kernel.eval(m1, m2, 1, 0, GpMode::stationary);
        auto t3 = clock::now();
        bool equal = (t->theta.alg.kind == AlgKind::split)
                         ? std::abs(brute.z - fast.z) <= 1e-9
                         : (brute.exact - fast.exact).is_zero();
        double speedup =
            static_cast<double>(ns(t1, t2)) /
            std::max<long long>(1, static_cast<long long>(ns(t2, t3)));
        Json j{{"p", t->theta.p()},
               {"kind", kind_name(t->theta.alg.kind)},
               {"k", k},
               {"kernel_build_ns", ns(t0, t1)},
               {"brute", {{"terms", brute.terms}, {"wall_ns", ns(t1, t2)}}},
               {"stationary", {{"terms", fast.terms}, {"wall_ns", ns(t2, t3)}}},
               {"speedup_vs_brute", speedup},
               {"values_equal", equal}};
        *out = dup_string(j.dump(2));
    });
}

}  // extern "C"
