#pragma once

namespace gkl {

/**
 * J-Bessel function of integer order nu >= 0 at x >= 0.  Ascending power
 * series for x <= nu, Miller's downward recurrence (normalized through
 * J_0 + 2 sum J_{2n} = 1) otherwise; absolute error <= 1e-12 for x <= 50.
 */
double bessel_j(unsigned nu, double x);

}  // namespace gkl
