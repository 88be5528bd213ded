#include "bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace gkl {

namespace {

double bessel_series(unsigned nu, double x) {
    // J_nu(x) = sum_j (-1)^j (x/2)^{nu+2j} / (j! (nu+j)!)
    const double h = x / 2.0;
    double term = 1.0;
    for (unsigned t = 1; t <= nu; ++t) term *= h / t;
    double sum = term;
    for (unsigned j = 1; j < 1000; ++j) {
        term *= -(h * h) / (static_cast<double>(j) * (nu + j));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

double bessel_miller(unsigned nu, double x) {
    // Downward three-term recurrence from well above both nu and x; the
    // unnormalized column is fixed by J_0 + 2 sum_{n>=1} J_{2n} = 1.
    unsigned start = static_cast<unsigned>(x + 20.0 + 10.0 * std::cbrt(x));
    if (start < nu + 12) start = nu + 12;
    if (start % 2) ++start;
    double jp1 = 0.0, j0 = 1e-30;
    double norm = 0.0, out = 0.0;
    for (unsigned n = start; n-- > 0;) {
        double jm1 = (2.0 * (n + 1)) / x * j0 - jp1;
        jp1 = j0;
        j0 = jm1;
        if (n == nu) out = j0;
        if (n > 0 && n % 2 == 0) norm += 2.0 * j0;
        if (std::abs(j0) > 1e250) {  // rescale to avoid overflow
            j0 *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            out *= 1e-250;
        }
    }
    norm += j0;
    return out / norm;
}

}  // namespace

double bessel_j(unsigned nu, double x) {
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    if (x <= static_cast<double>(nu)) return bessel_series(nu, x);
    return bessel_miller(nu, x);
}

}  // namespace gkl
