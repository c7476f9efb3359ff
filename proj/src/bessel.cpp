#include "rebgk/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rebgk {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct K01 {
    double k0;  // e^z K0(z)
    double k1;  // e^z K1(z)
};

// Ascending series (A&S 9.6.10-9.6.11), adequate below z ~ 2 where it
// converges in < 20 terms.
K01 k01_series(double z) {
    const double x2 = 0.25 * z * z;
    const double lg = std::log(0.5 * z);
    const double g = std::numbers::egamma;

    double term0 = 1.0;       // (z^2/4)^k / (k!)^2
    double term1 = 1.0;       // (z^2/4)^k / (k! (k+1)!)
    double i0 = term0;
    double i1sum = term1;
    double k0 = 0.0;          // sum H_k (z^2/4)^k/(k!)^2, k>=1
    double k1sum = term1 * (-2.0 * g + 1.0);  // (H_k + H_{k+1} - 2g) terms, k=0
    double hk = 0.0;
    for (int k = 1; k < 40; ++k) {
        term0 *= x2 / (static_cast<double>(k) * k);
        term1 *= x2 / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        const double hk1 = hk + 1.0 / (k + 1);
        i0 += term0;
        i1sum += term1;
        k0 += hk * term0;
        k1sum += (hk + hk1 - 2.0 * g) * term1;
        if (term0 < kEps * i0 && term1 < kEps * i1sum) break;
    }
    const double i1 = 0.5 * z * i1sum;
    const double K0 = -(lg + g) * i0 + k0;
    const double K1 = 1.0 / z + lg * i1 - 0.25 * z * k1sum;
    const double ez = std::exp(z);
    return {K0 * ez, K1 * ez};
}

// Steed's continued fraction CF2 (Thompson-Barnett), order 0; stable for
// z >= 2 and converges in a few dozen iterations.
K01 k01_cf2(double z) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a = -a1;
    double q = a1, c = a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 30000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) <= kEps) {
            const double k0 = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
            const double k1 = k0 * (z + 0.5 - a1 * h) / z;
            return {k0, k1};
        }
    }
    throw std::runtime_error("besselK: continued fraction failed to converge");
}

K01 k01_scaled(double z) {
    return z <= 2.0 ? k01_series(z) : k01_cf2(z);
}

}  // namespace

double besselK_scaled(int order, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("besselK: argument must be positive");
    if (order < 0 || order > 2)
        throw std::domain_error("besselK: order must be 0, 1 or 2");
    const K01 k = k01_scaled(z);
    switch (order) {
        case 0: return k.k0;
        case 1: return k.k1;
        default: return k.k0 + 2.0 * k.k1 / z;  // K2 = K0 + 2 K1 / z
    }
}

double besselK(int order, double z) {
    const double scaled = besselK_scaled(order, z);
    // e^{-z} underflows for z > ~745; the unscaled value is then meaningless.
    if (z > 700.0)
        throw std::underflow_error("besselK: unscaled value underflows, use besselK_scaled");
    return scaled * std::exp(-z);
}

double ratio_K0_K1(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("ratio_K0_K1: argument must be positive");
    const K01 k = k01_scaled(z);
    return k.k0 / k.k1;
}

}  // namespace rebgk
