// Acceptance gate: one line per criterion, exit nonzero on any failure.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "verify.hpp"

using namespace gkl;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, double secs,
            const std::string& detail = "") {
    std::printf("criterion %2d %-28s %s  (%.1fs)%s%s\n", idx, name,
                pass ? "PASS" : "FAIL", secs, detail.empty() ? "" : "  ",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ThetaChar make_theta(u64 p, AlgKind kind, unsigned cond, unsigned extra = 10) {
    EtaleQuadratic alg = EtaleQuadratic::make(PrimePower(p, cond + extra), kind);
    return ThetaChar::make(alg, cond, 1);
}

bool suite_ok(const Json& rep, std::string& detail) {
    if (rep["pass"].get<bool>()) return true;
    std::string first = rep["failures"].empty() ? std::string("?")
                                                : rep["failures"][0].dump();
    detail += " " + rep["suite"].get<std::string>() + ":" + first;
    return false;
}

// ---- 1: classical degeneration ----
void criterion_classical() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (u64 p : {5ull, 7ull}) {
        for (AlgKind kind : {AlgKind::inert, AlgKind::split}) {
            ok &= suite_ok(verify_classical(p, kind, 2), detail);
        }
    }
    double secs = seconds_since(t0);
    if (secs > 60.0) { ok = false; detail += " over 60s budget"; }
    report(1, "classical degeneration", ok, secs, detail);
}

// ---- 2: average dichotomy ----
void criterion_average() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (AlgKind kind : {AlgKind::inert, AlgKind::split}) {
        for (unsigned l : {1u, 2u}) {
            ok &= suite_ok(verify_average(5, kind, 3, l), detail);
        }
    }
    double secs = seconds_since(t0);
    if (secs > 300.0) { ok = false; detail += " over 300s budget"; }
    report(2, "averaging dichotomy", ok, secs, detail);
}

// ---- 3: depth invariance ----
void criterion_depth() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    ThetaChar in = make_theta(5, AlgKind::inert, 3);
    ThetaChar sp = make_theta(5, AlgKind::split, 3);
    for (unsigned k : {4u, 5u, 6u}) {
        GpKernel ki(in, k), ks(sp, k);
        for (u64 m = 1; m < 25 && ok; ++m) {
            if (m % 5 == 0) continue;
            GpValue fi = ki.eval(static_cast<i64>(m), 1, 1, 0, GpMode::brute);
            GpValue fs = ks.eval(static_cast<i64>(m), 1, 1, 0, GpMode::brute);
            for (unsigned d = 1; d <= k / 2; ++d) {
                GpValue vi = ki.eval(static_cast<i64>(m), 1, 1, d, GpMode::brute);
                GpValue vs = ks.eval(static_cast<i64>(m), 1, 1, d, GpMode::brute);
                if (!(fi.exact - vi.exact).is_zero() ||
                    std::abs(fs.z - vs.z) > 1e-9) {
                    ok = false;
                    detail = "mismatch at k=" + std::to_string(k) +
                             " m=" + std::to_string(m) + " d=" + std::to_string(d);
                    break;
                }
            }
        }
    }
    report(3, "depth invariance", ok, seconds_since(t0), detail);
}

// ---- 4: square-root cancellation envelope ----
void criterion_envelope() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = suite_ok(verify_cancellation(5, AlgKind::inert, 3), detail) &&
              suite_ok(verify_cancellation(5, AlgKind::split, 3), detail);
    report(4, "cancellation envelope", ok, seconds_since(t0), detail);
}

// ---- 5: orthogonality ----
void criterion_orthogonality() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = suite_ok(verify_orthogonality(5, 1), detail) &&
              suite_ok(verify_orthogonality(5, 2), detail);
    double secs = seconds_since(t0);
    if (secs > 60.0) { ok = false; detail += " over 60s budget"; }
    report(5, "family orthogonality", ok, secs, detail);
}

// ---- 6: family index counts ----
void criterion_indices() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (u64 p : {5ull, 7ull, 11ull}) {
        ThetaChar sp = make_theta(p, AlgKind::split, 4, 6);
        ThetaChar in = make_theta(p, AlgKind::inert, 4, 6);
        ThetaChar ra = make_theta(p, AlgKind::ramified, 8, 6);
        ok &= family_index(sp, 1, 0) == p - 1 &&
              alpha_family(sp, 1, 0).size() == p - 1;
        ok &= family_index(in, 1, 0) == p + 1 &&
              alpha_family(in, 1, 0).size() == p + 1;
        ok &= family_index(ra, 1, 0) == p &&
              alpha_family(ra, 1, 0).size() == p;
        for (unsigned n = 2; n <= 3; ++n) {
            ok &= family_index(sp, n, n - 1) == p;
            ok &= family_index(in, n, n - 1) == p;
            ok &= family_index(ra, n, n - 1) == p;
            ok &= alpha_family(in, n, n - 1).size() == p;
        }
        if (!ok && detail.empty()) detail = "at p=" + std::to_string(p);
    }
    report(6, "family index counts", ok, seconds_since(t0), detail);
}

// ---- 7: dual sums ----
void criterion_dualsum() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = suite_ok(verify_dualsum(5, AlgKind::inert, 2, 3), detail) &&
              suite_ok(verify_dualsum(5, AlgKind::inert, 2, 4), detail);
    double secs = seconds_since(t0);
    if (secs > 300.0) { ok = false; detail += " over 300s budget"; }
    report(7, "dual-sum pipeline", ok, secs, detail);
}

// ---- 8: geometric averaging, term by term in c ----
void criterion_geometric_average() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    const unsigned l = 2, kappa = 12;
    ThetaChar th = make_theta(5, AlgKind::inert, 3);
    Constants cl = constants(th, l);
    Constants cl0 = constants(th, cl.l0);
    u64 c_max = cl.c_l * 25;
    GeometricSide lhs = geometric_side(th, l, 1, 1, kappa, c_max);
    std::map<u64, std::complex<double>> lhs_g, lhs_contrib;
    for (const GeometricTerm& t : lhs.terms) {
        lhs_g[t.c] = t.g * static_cast<double>(cl.CF_l);
        lhs_contrib[t.c] = t.contrib * static_cast<double>(cl.CF_l);
    }
    std::map<u64, std::complex<double>> rhs_g, rhs_contrib;
    std::vector<ThetaChar> reps = alpha_family(th, l, cl.l0);
    if (reps.size() != cl.index) { ok = false; detail = "family size"; }
    for (const ThetaChar& rep : reps) {
        GeometricSide side = geometric_side(rep, cl.l0, 1, 1, kappa, c_max);
        for (const GeometricTerm& t : side.terms) {
            rhs_g[t.c] += t.g * static_cast<double>(cl0.CF_l);
            rhs_contrib[t.c] += t.contrib * static_cast<double>(cl0.CF_l);
        }
    }
    unsigned cpi = th.c_pi();
    for (const auto& [c, rg] : rhs_g) {
        std::complex<double> lg =
            lhs_g.count(c) ? lhs_g[c] : std::complex<double>(0.0, 0.0);
        unsigned k = 0;
        for (u64 t = c; t % 5 == 0; t /= 5) ++k;
        double scale = static_cast<double>(cl.CF_l) *
                       std::pow(5.0, (3.0 * k - cpi) / 2.0);
        if (std::abs(lg - rg) > 1e-9 * std::max(1.0, scale)) {
            ok = false;
            detail = "g mismatch at c=" + std::to_string(c);
            break;
        }
        std::complex<double> lc =
            lhs_contrib.count(c) ? lhs_contrib[c] : std::complex<double>(0.0, 0.0);
        if (std::abs(lc - rhs_contrib[c]) > 1e-9 * std::max(1.0, scale)) {
            ok = false;
            detail = "contribution mismatch at c=" + std::to_string(c);
            break;
        }
    }
    // the delta terms also balance: CF_l * delta == sum CF_l0 * delta
    if (cl.CF_l != cl0.CF_l * reps.size()) { ok = false; detail += " CF"; }
    report(8, "geometric averaging", ok, seconds_since(t0), detail);
}

// ---- 9: synthetic Petersson round trip ----
void criterion_petersson() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    const unsigned l = 1, kappa = 12;
    ThetaChar th = make_theta(5, AlgKind::inert, 2);
    Constants cst = constants(th, l);
    u64 c_max = cst.c_l * 25;
    // gauge normalizes the rhs to the bare bracket so the synthetic dataset
    // stays at unit scale
    double log_pref = (kappa - 1) * std::log(4.0 * M_PI);
    for (unsigned j = 2; j <= kappa - 2; ++j) log_pref -= std::log(j);
    double gauge = std::exp(-log_pref) / static_cast<double>(cst.CF_l);

    std::vector<u64> ms = {1, 2, 3, 4, 6};
    std::map<u64, std::complex<double>> brackets;
    for (u64 m : ms) {
        brackets[m] = geometric_side(th, l, static_cast<i64>(m), 1, kappa, c_max)
                          .bracket();
    }
    SpectralDataset ds;
    ds.p = 5;
    ds.level_exponent = th.c_pi();
    ds.kappa = kappa;
    SpectralEntry entry;
    entry.label = "synthetic";
    double b1 = brackets[1].real();
    for (u64 m : ms) entry.lambda[m] = brackets[m].real() / b1;
    entry.petersson_norm = 1.0 / b1;
    ds.entries.push_back(entry);
    const std::string path = "acceptance_spectral.json";
    {
        std::ofstream out(path);
        out << spectral_to_json(ds);
    }
    SpectralDataset loaded = load_spectral(path);
    for (u64 m : ms) {
        PeterssonResidual pr = petersson_residual(
            loaded, th, l, static_cast<i64>(m), 1, kappa, c_max, gauge);
        if (std::abs(pr.residual) > pr.tail_bound + 1e-9) {
            ok = false;
            detail = "residual " + std::to_string(std::abs(pr.residual)) +
                     " at m=" + std::to_string(m);
            break;
        }
    }
    std::remove(path.c_str());
    report(9, "Petersson round trip", ok, seconds_since(t0), detail);
}

// ---- 10: stationary-phase speedup ----
void criterion_speedup() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    ThetaChar th = make_theta(5, AlgKind::inert, 2);
    GpKernel ker(th, 8);
    auto tb = Clock::now();
    GpValue brute = ker.eval(1, 1, 1, 0, GpMode::brute);
    double brute_s = seconds_since(tb);
    auto ts = Clock::now();
    GpValue fast = ker.eval(1, 1, 1, 0, GpMode::stationary);
    double fast_s = seconds_since(ts);
    if (!(brute.exact - fast.exact).is_zero()) {
        ok = false;
        detail = "values differ";
    }
    double speedup = brute_s / std::max(fast_s, 1e-9);
    if (brute_s > 10.0 || fast_s > 1.0 || speedup < 10.0) {
        ok = false;
        detail += " brute=" + std::to_string(brute_s) +
                  "s fast=" + std::to_string(fast_s) + "s";
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "speedup %.0fx (%llu vs %llu terms)",
                  speedup, static_cast<unsigned long long>(brute.terms),
                  static_cast<unsigned long long>(fast.terms));
    report(10, "stationary speedup", ok, seconds_since(t0),
           detail.empty() ? std::string(buf) : detail);
}

}  // namespace

int main() {
    criterion_classical();
    criterion_average();
    criterion_depth();
    criterion_envelope();
    criterion_orthogonality();
    criterion_indices();
    criterion_dualsum();
    criterion_geometric_average();
    criterion_petersson();
    criterion_speedup();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
