#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "genkl.hpp"

namespace gkl {

struct GeometricTerm {
    u64 c = 0;
    std::complex<double> g{0.0, 0.0};  // g_global(m1, m2, theta, c)
    double bessel = 0.0;               // J_{kappa-1}(4 pi sqrt(m1 m2) / c)
    std::complex<double> contrib{0.0, 0.0};  // 2 pi i^kappa g/c * bessel
};

/**
 * The normalized bracket delta_{m1=m2} + 2 pi i^kappa sum_{c_l | c <= c_max}
 * G(m1,m2,theta,c^{-2}) J_{kappa-1}(4 pi sqrt(m1 m2)/c) / c, without the
 * C_F[l] (4 pi)^{kappa-1}/(kappa-2)! prefactors (those overflow floats for
 * large kappa and are applied only in petersson_residual).
 */
struct GeometricSide {
    int delta = 0;
    std::complex<double> kloosterman_sum{0.0, 0.0};
    double tail_bound = 0.0;  // certified bound on the truncated c > c_max tail
    unsigned kappa = 0;
    u64 c_max = 0;
    u64 c_l = 0;
    std::vector<GeometricTerm> terms;

    std::complex<double> bracket() const {
        return static_cast<double>(delta) + kloosterman_sum;
    }
};

GeometricSide geometric_side(const ThetaChar& theta, unsigned l, i64 m1, i64 m2,
                             unsigned kappa, u64 c_max);

std::string geometric_to_json(const GeometricSide& gs);

struct SpectralEntry {
    std::string label;
    std::map<u64, double> lambda;  // m -> normalized Hecke eigenvalue
    double petersson_norm = 1.0;
};

struct SpectralDataset {
    u64 p = 0;
    unsigned level_exponent = 0;  // level N = p^level_exponent
    unsigned kappa = 0;
    std::vector<SpectralEntry> entries;
};

/// Parse and validate a JSON spectral dataset (lambda_1 = 1 enforced).
SpectralDataset load_spectral(const std::string& path);
SpectralDataset parse_spectral(const std::string& text);
std::string spectral_to_json(const SpectralDataset& ds);

struct PeterssonResidual {
    double lhs = 0.0;
    std::complex<double> rhs{0.0, 0.0};
    std::complex<double> residual{0.0, 0.0};
    double tail_bound = 0.0;  // on the rhs, same scale as rhs
    GeometricSide geometric;
};

/**
 * lhs = sum_phi lambda_{m1} conj(lambda_{m2}) / ||phi||^2 against
 * rhs = gauge * CF_l * (4 pi)^{kappa-1}/(kappa-2)! * bracket.  The gauge
 * scalar absorbs any external norm convention (default 1).
 */
PeterssonResidual petersson_residual(const SpectralDataset& ds,
                                     const ThetaChar& theta, unsigned l, i64 m1,
                                     i64 m2, unsigned kappa, u64 c_max,
                                     double gauge = 1.0);

}  // namespace gkl
