#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "rebgk/auxsolver.hpp"
#include "rebgk/core.hpp"
#include "rebgk/moments.hpp"

// Shared state builders for the solver and dynamics tests.
namespace testing_helpers {

inline rebgk::Mixture paper_mixture() {
    using rebgk::SpeciesParams;
    return {SpeciesParams{1, 2.0, 1.0, 3.0}, SpeciesParams{2, 1.0, 1.0, 2.0},
            SpeciesParams{3, 3.0, 1.0, 1.0}, SpeciesParams{4, 1.0, 1.0, 4.0}};
}

struct JuttnerParams {
    double beta;
    double mu;
    double U1;  // spatial four-velocity component
};

/// Grid samples of (g/h^3) exp(beta mu - beta U^mu p_mu).
inline std::vector<double> sample_juttner(const JuttnerParams& jp, const rebgk::MomentumGrid& grid,
                                          std::size_t i, const rebgk::Mixture& mix,
                                          const rebgk::PhysicalConstants& pc) {
    const double u0 = std::hypot(pc.c, jp.U1);
    const double log_A =
        std::log(mix[i].degeneracy) - 3.0 * std::log(pc.h) + jp.beta * jp.mu;
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        f[j] = std::exp(log_A - jp.beta * (u0 * grid.energies(i)[j] - jp.U1 * grid.nodes()[j]));
    return f;
}

/// Common-equilibrium state: all four species share (beta, U) and the mu_i
/// satisfy the mass action law.
inline rebgk::DistributionState equilibrium_state(double beta, double U1,
                                                  const std::array<double, 4>& mu,
                                                  const rebgk::MomentumGrid& grid,
                                                  const rebgk::Mixture& mix,
                                                  const rebgk::PhysicalConstants& pc) {
    rebgk::DistributionState s;
    s.t = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        s.f[i] = sample_juttner({beta, mu[i], U1}, grid, i, mix, pc);
    return s;
}

/// Grid wide enough that a Juttner tail with the given worst-case decay is
/// below e^{-exponent} at the boundary.
inline rebgk::MomentumGrid adaptive_grid(double beta, double U1, const rebgk::Mixture& mix,
                                         const rebgk::PhysicalConstants& pc,
                                         double exponent = 60.0, double dp = 0.05) {
    const double u0 = std::hypot(pc.c, U1);
    const double pmax = exponent / (beta * (u0 - std::abs(U1)));
    auto n = static_cast<std::size_t>(2.0 * pmax / dp) + 1;
    if (n % 2 == 0) ++n;
    return rebgk::make_grid(-pmax, pmax, n, mix, pc);
}

struct PhiScan {
    double left = 0.0;    // refined edges of the feasible interval
    double right = 0.0;
    int crossings = 0;    // sign changes of ln Phi - ln(g1 g2/(g3 g4))
    bool contiguous = true;
};

/// Brute-force scan of Phi over the feasible beta interval, built only on
/// the public phi / in_feasible_domain API. The interval edges are located
/// by membership bisection from beta_sharp and the samples cluster
/// geometrically toward both edges, where ln Phi diverges and the crossing
/// may sit arbitrarily close to the boundary.
inline PhiScan scan_phi_bruteforce(const rebgk::SolverInputs& in, int n_core = 2000) {
    using rebgk::in_feasible_domain;
    const double beta_sharp = rebgk::find_beta_sharp(in);
    const double target = std::log(rebgk::degeneracy_ratio(in.species));

    auto edge = [&](double direction) {
        double inside = beta_sharp;
        double outside = beta_sharp;
        for (int k = 0; k < 200; ++k) {
            outside = direction > 0 ? outside * 1.5 : outside / 1.5;
            if (!in_feasible_domain(outside, in)) break;
            inside = outside;
            if (outside > 1e9 || outside < 1e-12) return outside;  // effectively unbounded
        }
        for (int k = 0; k < 100; ++k) {
            const double mid = std::sqrt(inside * outside);
            (in_feasible_domain(mid, in) ? inside : outside) = mid;
        }
        return inside;
    };

    PhiScan scan;
    scan.left = edge(-1.0);
    scan.right = edge(+1.0);

    std::vector<double> betas;
    betas.reserve(static_cast<std::size_t>(n_core) + 240);
    const double llo = std::log(scan.left), lhi = std::log(scan.right);
    for (int k = 0; k < n_core; ++k)
        betas.push_back(std::exp(llo + (lhi - llo) * (k + 0.5) / n_core));
    for (int k = 0; k < 60; ++k) {
        const double delta = std::pow(10.0, -13.0 + 12.0 * k / 59.0) * (lhi - llo);
        betas.push_back(std::exp(llo + delta));
        betas.push_back(std::exp(lhi - delta));
    }
    std::sort(betas.begin(), betas.end());

    bool have_prev = false;
    double prev_defect = 0.0;
    for (double beta : betas) {
        if (!in_feasible_domain(beta, in)) {
            // interior points of a single interval cannot be outside
            if (beta > scan.left && beta < scan.right) scan.contiguous = false;
            continue;
        }
        const double defect = std::log(rebgk::phi(beta, in)) - target;
        if (have_prev && std::signbit(defect) != std::signbit(prev_defect)) ++scan.crossings;
        prev_defect = defect;
        have_prev = true;
    }
    return scan;
}

/// Boosted Juttner mixtures with a strictly positive multiplicative bump;
/// the randomized admissible non-equilibrium family used across tests.
inline rebgk::DistributionState random_state(std::mt19937_64& rng,
                                             const rebgk::MomentumGrid& grid,
                                             const rebgk::Mixture& mix,
                                             const rebgk::PhysicalConstants& pc) {
    std::uniform_real_distribution<double> beta_d(0.5, 2.0), u_d(-0.5, 0.5), mu_d(0.0, 1.5),
        center_d(-3.0, 3.0), width_d(0.5, 2.0);
    rebgk::DistributionState s;
    s.t = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        s.f[i] = sample_juttner({beta_d(rng), mu_d(rng), u_d(rng)}, grid, i, mix, pc);
        const double c0 = center_d(rng), w = width_d(rng);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double x = (grid.nodes()[j] - c0) / w;
            s.f[i][j] *= 1.0 + 0.5 * std::exp(-0.5 * x * x);
        }
    }
    return s;
}

}  // namespace testing_helpers
