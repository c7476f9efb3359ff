#pragma once

namespace rebgk {

/// Modified Bessel function of the second kind K_n(z) for n in {0,1,2},
/// z > 0. Relative accuracy ~1e-14 over z in [1e-3, 700]; throws
/// std::domain_error for z <= 0 or unsupported order, std::underflow_error
/// once e^{-z} underflows (use the scaled form there).
double besselK(int order, double z);

/// Scaled form e^z K_n(z); finite for arbitrarily large z.
double besselK_scaled(int order, double z);

/// K0(z)/K1(z). Strictly increasing, in (0,1), -> 0 as z -> 0 and -> 1 as
/// z -> infinity. Evaluated through the scaled functions so it stays finite
/// for large z.
double ratio_K0_K1(double z);

}  // namespace rebgk
