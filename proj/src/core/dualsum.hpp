#pragma once

#include <complex>
#include <vector>

#include "genkl.hpp"

namespace gkl {

/**
 * The Whittaker profile F of Corollary 5.2 at fixed (theta, m2, mu):
 * F(u) = p^{-k} * sum_{m mod p^k} gp(m, m2, theta, mu) e(mu m ... ) --
 * precisely, the discrete Fourier transform of the full-domain gp slice in
 * its first argument.  F is supported on unit u in the field cases; the
 * vector stores all residues so that support is a checkable fact.
 */
struct WhittakerProfile {
    ThetaChar theta;
    i64 m2 = 1;
    unsigned k = 0;
    u64 mu_unit = 1;
    u64 pk = 1;
    std::vector<std::complex<double>> gp_slice;  // gp(m, m2, theta, mu), m mod p^k
    std::vector<std::complex<double>> F;         // profile, indexed by u mod p^k
};

/// Build the profile; requires k > i0 ("profile undefined in this range").
WhittakerProfile whittaker_profile(const ThetaChar& theta, i64 m2, unsigned k,
                                   u64 mu_unit);

/// Forward transform sum_{u mod p^k} F(u) e(-m1 u / p^k); equals the stored
/// gp_slice at m1 by exact Fourier inversion (round-trip invariant).
std::complex<double> profile_forward(const WhittakerProfile& prof, i64 m1);

/// Voronoi-dual sum of Definition 5.3:
/// (1 - p^{-1})^{-1} * sum_{u unit mod p^k} F(u) e(-ell m1 ubar / p^k).
std::complex<double> gtilde(const WhittakerProfile& prof, i64 m1, i64 ell);

/// Support data for the Lemma 5.3 dichotomy at (m1, ell).
struct SupportCheck {
    bool in_support = false;
    int v = 0;          // v_p(m2 * mu_unit + ell * m1), capped at k
    int threshold = 0;  // 2k - c(pi) below the Ramanujan range, k - 1 at and above
};

SupportCheck gtilde_support(const WhittakerProfile& prof, i64 m1, i64 ell);

/// |gtilde| / p^{(3k - c(pi))/2}, the Lemma 5.3 envelope ratio.
double gtilde_bound_ratio(const WhittakerProfile& prof, std::complex<double> value);

/// Independent oracle for the k >= c(pi) degeneration:
/// (1 - p^{-1})^{-1} * Ramanujan sum at -(m2 mu_unit + ell m1) mod p^k.
std::complex<double> gtilde_ramanujan(const WhittakerProfile& prof, i64 m1, i64 ell);

}  // namespace gkl
