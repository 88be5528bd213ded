#pragma once

#include <vector>

#include "quad.hpp"

namespace gkl {

/**
 * A value of a character: an exact p-power-root-of-unity part (CycValue)
 * times an exact (p-1)-th root of unity e(tame_num/tame_den) from the split
 * tame component.  Field-case values have tame_den = 1, so CharValue
 * degenerates to a plain CycValue there.
 */
struct CharValue {
    CycValue wild;
    u64 tame_num = 0;
    u64 tame_den = 1;

    static CharValue one(u64 p) { return {CycValue::one(p), 0, 1}; }

    CharValue mul(const CharValue& o) const;
    CharValue inverse_of_root() const;  // valid when wild is a single root with coef 1
    std::complex<double> to_complex() const;
    bool is_zero() const { return wild.is_zero(); }
};

/**
 * A character theta of L^x trivial on F^x, stored through the alpha
 * parametrization:
 *   - field cases: alpha_theta = alpha0 / (pi_L^c(theta) * sqrt(D)) with
 *     alpha0 a unit mod p^i0; theta(f*v) = psi_L(alpha_theta * log_L v) on
 *     F^x * U_L(1).  The tame component on O_L^x / O_F^x U_L(1) is not
 *     represented; evaluation outside F^x U_L(1) errors loudly.
 *   - split: theta = (chi1, chi1^{-1}) with c(chi1) = i0,
 *     chi1(u) = omega(u)^tame_exp * psi(alpha_chi1 * log<u>) on units,
 *     alpha_chi1 = alpha0 / p^i0, and chi1(p) := 1.
 */
struct ThetaChar {
    EtaleQuadratic alg;
    unsigned cond = 0;   // c(theta), positive multiple of e_L, i0 >= 2
    u64 alpha0 = 1;      // unit residue mod p^i0
    u64 tame_exp = 0;    // split only, mod p-1
    int sign = 1;        // ramified only: theta(pi_L); stored, never used
    u64 tame_label = 0;  // inert j=0 family enumeration label mod p+1;
                         // invisible to evaluation on Z*U_L(1)

    static ThetaChar make(const EtaleQuadratic& alg, unsigned cond, u64 alpha0,
                          u64 tame_exp = 0, int sign = 1);

    unsigned i0() const { return cond / alg.e_L(); }
    unsigned c_pi() const { return 2 * i0() + alg.e_L() - 1; }
    u64 p() const { return alg.pp.p; }

    /// alpha_theta as an element of L (field cases only): pure sqrt(D)-part.
    QuadElement alpha_theta() const;

    /// Conjugate-parametrized character (alpha -> -alpha).
    ThetaChar conjugated() const;

    std::string to_json() const;
};

/// Teichmuller lift of a unit: the (p-1)-th root of unity congruent to a
/// mod p, computed by iterating a -> a^p to its fixed point mod p^n.
u64 teichmuller(u64 a, const PrimePower& pp);

/// Discrete log of a unit mod p with respect to the smallest generator.
u64 dlog_mod_p(u64 a, u64 p);
u64 generator_mod_p(u64 p);

/// chi1 evaluated at a scalar t (split characters; chi1(p) := 1).
CharValue eval_chi1(const ThetaChar& theta, const PadicScalar& t);

/**
 * Evaluate theta at z.  Field cases require z in F^x * U_L(1) (checked via
 * in_ZU1); split accepts any invertible pair.
 */
CharValue eval_theta(const ThetaChar& theta, const QuadElement& z);

/// [theta[n] : theta[m]]: the step to radius 1 is p-1 / p+1 / p for
/// split / inert / ramified, each further step is p.
u64 family_index(const ThetaChar& theta, unsigned n, unsigned m);

/**
 * Representatives of theta[n] / ~_j.  Pure wild alpha-shifts for j >= 1
 * (alpha' in alpha * U_F(i0-n), distinct mod U_F(i0-j)); j = 0 additionally
 * crosses with the p-1 tame twists (split) or the p+1 tame labels (inert);
 * ramified j = 0 stays pure-alpha (tame forced trivial).
 */
std::vector<ThetaChar> alpha_family(const ThetaChar& theta, unsigned n, unsigned j);

/**
 * (1/[theta[j]:theta[0]]) * sum over theta[j]/~_0 of theta'(x), for x in
 * O_L^x (field cases additionally require x evaluable, i.e. in F^x U_L(1)).
 * Equals theta(x) when x in O_F^x U_L(e_L*j) and is exactly zero otherwise.
 */
CharValue family_average(const ThetaChar& theta, unsigned j, const QuadElement& x);

/// Is x (a unit) in O_F^x * U_L(n)?  Used to state the orthogonality law.
bool in_ZUn(const QuadElement& x, unsigned n);

}  // namespace gkl
