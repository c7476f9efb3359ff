#include "rebgk/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rebgk/bessel.hpp"

namespace rebgk {

namespace {

double kahan_sum(const std::vector<double>& w, const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double term = w[j] * v[j] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

// quad(f * g) without materializing the product
template <class F>
double weighted_sum(const MomentumGrid& grid, const std::vector<double>& f, F&& g) {
    const auto& w = grid.weights();
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double term = w[j] * f[j] * g(j) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

}  // namespace

double quad(const MomentumGrid& grid, const std::vector<double>& values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("quad: values length does not match grid");
    return kahan_sum(grid.weights(), values);
}

SpeciesMoments species_moments(const std::vector<double>& f, const MomentumGrid& grid,
                               const SpeciesParams& sp, const PhysicalConstants& pc) {
    if (f.size() != grid.size())
        throw std::invalid_argument("species_moments: f length does not match grid");
    const auto& p = grid.nodes();
    const auto& p0 = grid.energies(static_cast<std::size_t>(sp.index - 1));

    SpeciesMoments m;
    m.j0 = weighted_sum(grid, f, [](std::size_t) { return 1.0; });
    m.j0t = weighted_sum(grid, f, [&](std::size_t j) { return 1.0 / p0[j]; });
    m.j1t = weighted_sum(grid, f, [&](std::size_t j) { return p[j] / p0[j]; });

    const double n2 = (m.j0 - m.j1t) * (m.j0 + m.j1t);
    if (!(n2 > 0.0))
        throw std::runtime_error("species_moments: degenerate distribution, n^2 <= 0");
    m.n = std::sqrt(n2);
    m.N = FourVec{pc.c * m.j0, pc.c * m.j1t};
    m.U = FourVec{pc.c * m.j0 / m.n, pc.c * m.j1t / m.n};
    return m;
}

double moment_ratio(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
                    int dimension) {
    const double mc = sp.mass * pc.c;
    const double z = mc * pc.c * beta;
    if (dimension == 1) return mc / ratio_K0_K1(z);
    if (dimension == 3) return 2.0 / (pc.c * beta) + mc * ratio_K0_K1(z);
    throw std::invalid_argument("moment_ratio: dimension must be 1 or 3");
}

double log_Mtilde(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
                  int dimension) {
    const double mc = sp.mass * pc.c;
    const double z = mc * pc.c * beta;
    if (dimension == 1) return std::log(2.0 * besselK_scaled(0, z)) - z;
    if (dimension == 3)
        return std::log(4.0 * std::numbers::pi * mc * besselK_scaled(1, z) / (pc.c * beta)) - z;
    throw std::invalid_argument("log_Mtilde: dimension must be 1 or 3");
}

double log_M(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
             int dimension) {
    const double mc = sp.mass * pc.c;
    const double z = mc * pc.c * beta;
    if (dimension == 1) return std::log(2.0 * mc * besselK_scaled(1, z)) - z;
    if (dimension == 3)
        return std::log(4.0 * std::numbers::pi * mc * mc * besselK_scaled(2, z) / (pc.c * beta)) -
               z;
    throw std::invalid_argument("log_M: dimension must be 1 or 3");
}

JuttnerMoments juttner_M(double beta, const SpeciesParams& sp,
                         const PhysicalConstants& pc, int dimension) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("juttner_M: beta must be positive");
    JuttnerMoments jm;
    jm.dimension = dimension;
    jm.log_M = log_M(beta, sp, pc, dimension);
    jm.log_Mtilde = log_Mtilde(beta, sp, pc, dimension);
    jm.ratio = moment_ratio(beta, sp, pc, dimension);
    jm.M = std::exp(jm.log_M);
    jm.Mtilde = std::exp(jm.log_Mtilde);
    return jm;
}

std::array<AttractorLabMoments, 4> juttner_moments_lab(const AuxiliaryState& aux,
                                                       const Mixture& mix,
                                                       const PhysicalConstants& pc,
                                                       const MomentumGrid& grid) {
    const auto& p = grid.nodes();
    std::array<AttractorLabMoments, 4> out;
    std::vector<double> J(grid.size());
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& p0 = grid.energies(i);
        const double log_A =
            std::log(mix[i].degeneracy) - 3.0 * std::log(pc.h) + aux.beta * aux.mu[i];
        for (std::size_t j = 0; j < grid.size(); ++j)
            J[j] = std::exp(log_A - aux.beta * (aux.U.t * p0[j] - aux.U.x * p[j]));
        out[i].j0 = quad(grid, J);
        out[i].j0t = weighted_sum(grid, J, [&](std::size_t j) { return 1.0 / p0[j]; });
        out[i].j1t = weighted_sum(grid, J, [&](std::size_t j) { return p[j] / p0[j]; });
    }
    return out;
}

}  // namespace rebgk
