#include "selfcheck.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <vector>

#include "rebgk/auxsolver.hpp"
#include "rebgk/bessel.hpp"
#include "rebgk/dynamics.hpp"
#include "rebgk/io.hpp"
#include "rebgk/moments.hpp"
#include "rebgk/scenario.hpp"

namespace rebgk_tool {

namespace {

using namespace rebgk;

struct Reporter {
    std::ostream& os;
    int failures = 0;

    void check(const char* name, bool ok, double worst) {
        os << (ok ? "[PASS] " : "[FAIL] ") << name << "  (worst " << std::scientific
           << std::setprecision(3) << worst << ")\n";
        if (!ok) ++failures;
    }
};

std::vector<double> sample_juttner(double beta, double mu, double u1, std::size_t i,
                                   const Mixture& mix, const PhysicalConstants& pc,
                                   const MomentumGrid& grid) {
    const double u0 = std::hypot(pc.c, u1);
    const double log_A = std::log(mix[i].degeneracy) - 3.0 * std::log(pc.h) + beta * mu;
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        f[j] = std::exp(log_A - beta * (u0 * grid.energies(i)[j] - u1 * grid.nodes()[j]));
    return f;
}

void bessel_checks(Reporter& rep) {
    // positivity + recurrence on a log grid
    double worst = 0.0;
    bool positive = true;
    for (int k = 0; k < 60; ++k) {
        const double z = std::exp(std::log(1e-3) + k * (std::log(100.0) - std::log(1e-3)) / 59);
        const double k0 = besselK(0, z), k1 = besselK(1, z), k2 = besselK(2, z);
        positive = positive && k0 > 0 && k1 > 0 && k2 > 0;
        worst = std::max(worst, std::abs(k2 - k0 - 2.0 * k1 / z) / k2);
    }
    rep.check("bessel positivity + recurrence residual <= 1e-10", positive && worst <= 1e-10,
              worst);

    double prev = 0.0;
    bool monotone = true;
    for (int k = 0; k < 200; ++k) {
        const double z = std::exp(std::log(1e-3) + k * (std::log(1e4) - std::log(1e-3)) / 199);
        const double r = ratio_K0_K1(z);
        monotone = monotone && r > prev && r < 1.0;
        prev = r;
    }
    rep.check("ratio_K0_K1 strictly increasing in (0,1)", monotone, prev);
}

void solver_checks(Reporter& rep) {
    const PhysicalConstants pc;
    Mixture mix{SpeciesParams{1, 2.0, 1.0, 3.0}, SpeciesParams{2, 1.0, 1.0, 2.0},
                SpeciesParams{3, 3.0, 1.0, 1.0}, SpeciesParams{4, 1.0, 1.0, 4.0}};
    std::mt19937_64 rng(20240819);
    std::uniform_real_distribution<double> beta_d(0.4, 2.5), u_d(-0.8, 0.8), mu_d(0.5, 1.8);

    // equilibrium round trips
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = beta_d(rng), u1 = u_d(rng);
        std::array<double, 4> mu{mu_d(rng), mu_d(rng), mu_d(rng), 0.0};
        mu[3] = mu[0] + mu[1] - mu[2];
        const double u0 = std::hypot(pc.c, u1);
        const double pmax = 60.0 / (beta * (u0 - std::abs(u1)));
        const auto n = static_cast<std::size_t>(2.0 * pmax / 0.05) | 1u;
        const auto grid = make_grid(-pmax, pmax, n, mix, pc);
        DistributionState s;
        s.t = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            s.f[i] = sample_juttner(beta, mu[i], u1, i, mix, pc, grid);
        const auto aux = solve_parameters(gather_inputs(s, grid, mix, pc));
        worst = std::max(worst, std::abs(aux.beta - beta) / beta);
        worst = std::max(worst, std::abs(aux.U.x - u1) / std::max(1.0, std::abs(u1)));
        for (std::size_t i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(aux.mu[i] - mu[i]) / std::max(1.0, std::abs(mu[i])));
    }
    rep.check("equilibrium round trip recovers (beta, U, mu) <= 1e-8", worst <= 1e-8, worst);

    // Case 1 solve: residual record and Phi scan
    const RunConfig cfg = default_case1_config();
    const auto grid = make_grid(cfg.grid.p_min, cfg.grid.p_max, cfg.grid.n_nodes, mix, pc);
    const auto s = init_case1(cfg, grid);
    const auto in = gather_inputs(s, grid, mix, pc);
    const auto aux = solve_parameters(in);
    rep.check("case1 constraint residuals <= 1e-10", aux.residuals.max() <= 1e-10,
              aux.residuals.max());

    int crossings = 0;
    bool prev_in = false;
    double prev_defect = 0.0;
    const double target = std::log(degeneracy_ratio(mix));
    for (int k = 0; k < 2000; ++k) {
        const double beta = std::exp(std::log(1e-3) + k * (std::log(1e3) - std::log(1e-3)) / 1999);
        if (!in_feasible_domain(beta, in)) {
            prev_in = false;
            continue;
        }
        const double defect = std::log(phi(beta, in)) - target;
        if (prev_in && std::signbit(defect) != std::signbit(prev_defect)) ++crossings;
        prev_defect = defect;
        prev_in = true;
    }
    rep.check("case1 Phi crosses the degeneracy ratio exactly once", crossings == 1,
              static_cast<double>(crossings));

    // entropy production on random admissible states
    SolverContext ctx{mix, pc, make_grid(-120.0, 120.0, 4801, mix, pc), SolverOptions{}};
    std::uniform_real_distribution<double> c_d(-3.0, 3.0), w_d(0.5, 2.0), mu2_d(0.0, 1.5),
        b2_d(0.5, 2.0), u2_d(-0.5, 0.5);
    double worst_prod = -1e300;
    for (int trial = 0; trial < 50; ++trial) {
        DistributionState st;
        st.t = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            st.f[i] = sample_juttner(b2_d(rng), mu2_d(rng), u2_d(rng), i, mix, pc, ctx.grid);
            const double c0 = c_d(rng), w = w_d(rng);
            for (std::size_t j = 0; j < ctx.grid.size(); ++j) {
                const double x = (ctx.grid.nodes()[j] - c0) / w;
                st.f[i][j] *= 1.0 + 0.5 * std::exp(-0.5 * x * x);
            }
        }
        const auto r = rhs(st, ctx);
        std::vector<double> integrand(ctx.grid.size());
        double prod = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < ctx.grid.size(); ++j)
                integrand[j] = r.dfdt[i][j] * std::log(st.f[i][j]);
            prod += quad(ctx.grid, integrand);
        }
        worst_prod = std::max(worst_prod, prod);
    }
    rep.check("entropy production <= 1e-12 on random states", worst_prod <= 1e-12, worst_prod);
}

}  // namespace

int run_selfcheck(std::ostream& os) {
    Reporter rep{os};
    bessel_checks(rep);
    solver_checks(rep);
    os << (rep.failures == 0 ? "selfcheck: all checks passed\n"
                             : "selfcheck: FAILURES present\n");
    return rep.failures;
}

}  // namespace rebgk_tool
