#pragma once

#include <json.hpp>

#include "dualsum.hpp"
#include "genkl.hpp"
#include "trace.hpp"

namespace gkl {

using Json = nlohmann::json;

/**
 * Property suites.  Each returns a machine-readable report
 * {"suite": ..., "pass": bool, "cases": N, "failures": [...], ...stats}
 * and never throws on a mathematical failure (only on malformed input).
 */

/// gp == classical local Kloosterman sum for k in {c(pi), c(pi)+1}, all unit
/// m mod p^k (exact in the field cases, <= 1e-9 split), with sampled
/// cross-checks against kl_local as the independent oracle.
Json verify_classical(u64 p, AlgKind kind, unsigned cond, bool twist = false);

/// gp_average dichotomy: exact zero below the k-threshold, exactly gp(theta)
/// at and above it, on k in {i0+1, ..., i0+l+1} and all unit products mod p^2.
Json verify_average(u64 p, AlgKind kind, unsigned cond, unsigned l);

/// Square-root cancellation envelope max |gp| / p^{k/2} over the average-suite
/// grids plus stratified samples at larger k; asserts <= 8.
Json verify_cancellation(u64 p, AlgKind kind, unsigned cond, bool twist = false);

/// Dual-sum pipeline at (theta, k): Fourier round trip, Parseval, the
/// Lemma 5.3 support dichotomy and envelope, and the Ramanujan degeneration
/// when k >= c(pi).
Json verify_dualsum(u64 p, AlgKind kind, unsigned cond, unsigned k,
                    bool twist = false);

/// Family enumeration: index counts (p-1 / p+1 / p at radius 1, p per further
/// step), representative counts, and pairwise distinctness certified by
/// evaluation wherever the represented data allows it.
Json verify_bijection(u64 p, AlgKind kind, unsigned cond, unsigned n);

/// Orthogonality of the family average: equals theta(x) on O_F^x U_L(e_L j)
/// and is exactly zero off it, exhaustively over evaluable unit cosets,
/// for all three algebra kinds at the minimal conductor for radius j.
Json verify_orthogonality(u64 p, unsigned j);

}  // namespace gkl
