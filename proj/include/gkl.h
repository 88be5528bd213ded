/*
 * C interface to the generalized-Kloosterman library.
 *
 * Conventions:
 *   - All entry points return a status code: GKL_OK on success,
 *     GKL_ERR_DOMAIN for mathematical/domain failures, GKL_ERR_USAGE for
 *     malformed arguments.  gkl_last_error() describes the last failure on
 *     the calling thread.
 *   - Character data lives behind the opaque gkl_theta handle.
 *   - Strings returned through char** are heap-allocated by the library and
 *     must be released with gkl_free_string().
 */
#ifndef GKL_H
#define GKL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define GKL_OK 0
#define GKL_ERR_DOMAIN 1
#define GKL_ERR_USAGE 2

typedef struct gkl_theta gkl_theta;

const char* gkl_last_error(void);
void gkl_set_threads(unsigned n);
void gkl_free_string(char* s);

/*
 * kind: "split", "inert" or "ramified"; ramified_twist selects D = p*r
 * instead of D = p.  cond is c(theta) (a positive multiple of e_L with
 * c(theta)/e_L >= 2); alpha0 a unit residue; tame_exp the split tame
 * exponent mod p-1.  Returns NULL on failure (see gkl_last_error()).
 */
gkl_theta* gkl_theta_new(uint64_t p, const char* kind, unsigned cond,
                         int ramified_twist, uint64_t alpha0,
                         uint64_t tame_exp);
void gkl_theta_free(gkl_theta* t);
int gkl_theta_json(const gkl_theta* t, char** out);

typedef struct {
    double re, im;
    double abs;
    uint64_t terms;   /* summation cosets actually touched */
    int has_exact;    /* nonzero when an exact cyclotomic value backs re/im */
    int zero_reason;  /* nonzero when structurally zero (outside support) */
} gkl_gp_result;

/* mode: "brute" or "stationary". */
int gkl_gp(const gkl_theta* t, int64_t m1, int64_t m2, unsigned k,
           uint64_t mu_unit, unsigned depth, const char* mode,
           gkl_gp_result* out);
int gkl_gp_average(const gkl_theta* t, unsigned l, int64_t m1, int64_t m2,
                   unsigned k, uint64_t mu_unit, gkl_gp_result* out);
int gkl_g_global(const gkl_theta* t, unsigned l, int64_t m1, int64_t m2,
                 uint64_t c, gkl_gp_result* out);

typedef struct {
    unsigned i0, c_pi, l0, l;
    uint64_t c0, c_l, index, CF_l0, CF_l;
} gkl_constants_result;

int gkl_constants(const gkl_theta* t, unsigned l, gkl_constants_result* out);

/* Classical local Kloosterman sum at q with mu = mu_num/mu_den. */
int gkl_kl_local(int64_t m1, int64_t m2, int64_t mu_num, int64_t mu_den,
                 uint64_t q, double* re, double* im);

double gkl_bessel_j(unsigned nu, double x);

/*
 * Table emitters (CSV) and report emitters (JSON).
 *
 * gp table columns:
 *   p,kind,D,cond,m1,m2,k,depth,re,im,abs,abs_over_sqrt,mode,wall_ns
 * grid_units != 0 sweeps m1 over all units mod p^k (m2 fixed).
 *
 * dualsum columns: m1,in_support,re,im,abs,bound_ratio
 * grid != 0 sweeps m1 over all units mod p^k.
 */
int gkl_gp_table_csv(const gkl_theta* t, int64_t m1, int64_t m2, unsigned k,
                     uint64_t mu_unit, unsigned depth, const char* mode,
                     int grid_units, char** out);
int gkl_dualsum_csv(const gkl_theta* t, unsigned k, int64_t m2, int64_t ell,
                    int64_t m1, int grid, char** out);
int gkl_trace_geometric_json(const gkl_theta* t, unsigned l, int64_t m1,
                             int64_t m2, unsigned kappa, uint64_t c_max,
                             char** out);
int gkl_trace_residual_json(const gkl_theta* t, const char* data_path,
                            unsigned l, int64_t m1, int64_t m2, unsigned kappa,
                            uint64_t c_max, double gauge, char** out);

/*
 * Verification suites: "classical", "average", "cancellation", "dualsum",
 * "bijection", "orthogonality".  l, k, n are read by the suites that need
 * them.  The report's "pass" field is authoritative.
 */
int gkl_verify_json(const char* suite, uint64_t p, const char* kind,
                    unsigned cond, unsigned l, unsigned k, unsigned n,
                    int twist, char** out);

/* Brute vs stationary benchmark at (theta, k); kernel build amortized. */
int gkl_bench_json(const gkl_theta* t, unsigned k, int64_t m1, int64_t m2,
                   char** out);

#ifdef __cplusplus
}
#endif

#endif /* GKL_H */
