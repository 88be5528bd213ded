#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "characters.hpp"
#include "kloosterman.hpp"

namespace gkl {

/// Structural constants of the geometric side (Eq. 4.5 / Def. c0 / Eq. 4.6).
struct Constants {
    unsigned i0 = 0;
    unsigned c_pi = 0;  // c(pi_theta) = 2 i0 + e_L - 1
    unsigned l0 = 0;    // 1 for inert, 0 otherwise
    unsigned l = 0;
    u64 c0 = 0;         // p^(i0+1) supercuspidal, p^i0 principal series
    u64 c_l = 0;        // c0 * p^(l-l0)
    u64 index = 1;      // [theta[l] : theta[l0]]
    u64 CF_l0 = 0;      // (p+1)p^i0 supercuspidal, (p+1)p^(i0-1) principal series
    u64 CF_l = 0;       // CF_l0 * index
};

Constants constants(const ThetaChar& theta, unsigned l);

/// Evaluation mode for the t2-sum.
enum class GpMode { brute, stationary };

struct GpParams {
    ThetaChar theta;
    i64 m1 = 1, m2 = 1;   // general integers (non-units allowed for dual sum)
    unsigned k = 0;        // v(mu) = -2k
    u64 mu_unit = 1;       // unit part of mu * p^(2k), a residue mod p^k
    unsigned depth = 0;    // 0 = full domain, else 1 <= depth <= floor(k/2)
    GpMode mode = GpMode::brute;
    double chi1_p_frac = 0.0;  // split: chi1(p) = e(chi1_p_frac); must cancel
};

struct GpValue {
    std::complex<double> z{0.0, 0.0};
    CycValue exact;          // authoritative in the field cases
    bool has_exact = false;
    const char* reason = nullptr;  // e.g. "outside support"
    u64 terms = 0;           // t2-cosets actually touched (bench/perf)
};

/**
 * Shared per-(theta, k) tabulation of the t2-sum.  For each unit numerator a
 * (t2 = a/p^k) the integrand factors as
 *     exp part:  e_static(a) + m1 m2 mu_unit * f(a)   (mod p^k)
 * field cases (exact p^k-th roots), resp. a complex row value and the same
 * frequency structure in the split case; nres(a) carries the quadratic
 * congruence residue for depth restriction and the stationary path.
 */
class GpKernel {
  public:
    GpKernel(const ThetaChar& theta, unsigned k);

    GpValue eval(i64 m1, i64 m2, u64 mu_unit, unsigned depth, GpMode mode,
                 double chi1_p_frac = 0.0) const;

    /// Field cases only: the exact value as a dense normalized power-basis
    /// coefficient table (index = exponent, order p^k).  Same content as
    /// eval().exact but without per-term map overhead; used by the
    /// exhaustive grid suites.
    std::vector<i64> eval_flat(i64 m1, i64 m2, u64 mu_unit, unsigned depth) const;

    unsigned k() const { return k_; }
    u64 pk() const { return pk_; }
    /// e(j/p^k) lookup shared by the evaluation paths.
    const std::vector<std::complex<double>>& roots() const { return roots_; }

  private:
    struct Row {
        u64 e_static = 0;  // field: psi+theta exponent mod p^k
        u64 f = 0;         // frequency multiplier mod p^k
        u64 nres = 0;      // quadratic congruence residue mod p^k
        std::complex<double> c{0.0, 0.0};  // split: chi1^2(a) e(a/p^k)
        u64 chi_wild = 0;  // split: wild exponent of chi1^2(a) mod p^k (diagnostic)
        bool unit = false;
    };

    void build_field_rows();
    void build_split_rows();
    GpValue eval_field(u64 m, unsigned depth, GpMode mode) const;
    GpValue eval_split(i64 m1, i64 m2, u64 mu_unit, unsigned depth, GpMode mode,
                       double chi1_p_frac) const;

    /// Units a mod p^i with a^2 == r (empty, or the pair +-a0).
    std::vector<u64> sqrt_mod(u64 r, unsigned i) const;

    ThetaChar theta_;
    unsigned k_ = 0;
    u64 pk_ = 1;        // p^k
    u64 s_res_ = 0;     // field: residue of p^(2k) alpha_theta^2 mod p^k
    u64 a_lin_ = 0;     // split: residue of 2 alpha_chi1 p^k mod p^k
    std::vector<Row> rows_;  // indexed by a in [0, p^k)
    std::vector<std::complex<double>> roots_;
};

/// Supercuspidal G_p (theta inert/ramified); exact CycValue carrier.
GpValue gp_supercuspidal(const GpParams& params);
/// Principal-series G_p (theta split); complex carrier.
GpValue gp_principal(const GpParams& params);
/// Dispatch on the algebra kind.
GpValue gp(const GpParams& params);

/**
 * (1/[theta[l]:theta[l0]]) * sum over theta[l]/~_l0 of gp(theta', ...),
 * computed honestly (no shortcut); by the averaging lemma it equals
 * gp(theta, ...) when k >= v_p(c0) + l - l0 and is exactly zero otherwise.
 */
GpValue gp_average(const ThetaChar& theta, unsigned l, i64 m1, i64 m2, unsigned k,
                   u64 mu_unit, unsigned depth = 0);

struct GGlobalValue {
    std::complex<double> z{0.0, 0.0};
    const char* reason = nullptr;
};

/**
 * Global generalized Kloosterman sum of Def. 4.5 at mu = c^{-2}:
 * gp at p times the product of classical local sums at the other primes
 * dividing c.  Requires c_l | c (else 0 with reason).
 */
GGlobalValue g_global(i64 m1, i64 m2, const ThetaChar& theta, unsigned l, u64 c);

/// Unit part of c^{-2} * p^(2k) mod p^k for c with p-part p^k.
u64 mu_unit_of_c(u64 c, u64 p, unsigned k);

}  // namespace gkl
