#include "rebgk/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace rebgk {

namespace {

Mixture paper_mixture() {
    return Mixture{SpeciesParams{1, 2.0, 1.0, 3.0}, SpeciesParams{2, 1.0, 1.0, 2.0},
                   SpeciesParams{3, 3.0, 1.0, 1.0}, SpeciesParams{4, 1.0, 1.0, 4.0}};
}

}  // namespace

void validate_config(const RunConfig& cfg) {
    validate_constants(cfg.constants);
    validate_mixture(cfg.species);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("config: t_end must be >= 0");
    if (cfg.stride < 1) throw std::invalid_argument("config: stride must be >= 1");
    if (!(cfg.solver.beta_rel_tol > 0.0) || !(cfg.solver.residual_tol > 0.0) ||
        !(cfg.solver.xi_threshold_factor > 0.0))
        throw std::invalid_argument("config: solver tolerances must be positive");
    if (cfg.scenario == ScenarioKind::case2) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (!(cfg.case2.a[i] < cfg.case2.b[i]))
                throw std::invalid_argument("config: case2 support needs a < b");
            if (!(cfg.case2.height[i] > 0.0))
                throw std::invalid_argument("config: case2 height must be positive");
            if (!(cfg.case2.a[i] < cfg.case2.apex[i] && cfg.case2.apex[i] < cfg.case2.b[i]))
                throw std::invalid_argument("config: case2 apex outside support");
        }
    } else {
        for (double b : cfg.case1.beta0)
            if (!(b > 0.0)) throw std::invalid_argument("config: case1 beta0 must be positive");
    }
}

RunConfig default_case1_config() {
    RunConfig cfg;
    cfg.species = paper_mixture();
    cfg.grid = GridSpec{-30.0, 30.0, 1201};
    cfg.scenario = ScenarioKind::case1;
    cfg.case1.mu0 = {1.8, 1.3, 1.0, 1.0};
    cfg.case1.U0 = {0.5, -0.3, 1.0, 0.2};
    cfg.case1.beta0 = {0.8, 1.1, 0.9, 1.2};
    cfg.dt = 0.01;
    cfg.t_end = 10.0;
    cfg.stride = 10;
    // case2 table kept populated so scenario switches stay valid
    cfg.case2.a = {-9.0, -7.5, -3.0, -5.5};
    cfg.case2.b = {-2.0, 3.0, 1.0, -5.0};
    cfg.case2.height = {0.2, 0.38, 0.25, 0.28};
    for (std::size_t i = 0; i < 4; ++i)
        cfg.case2.apex[i] = 0.5 * (cfg.case2.a[i] + cfg.case2.b[i]);
    return cfg;
}

RunConfig default_case2_config() {
    RunConfig cfg = default_case1_config();
    cfg.scenario = ScenarioKind::case2;
    // The transient attractor is hot and strongly boosted; [-30, 30] leaves
    // tails of order e^-8 at the boundary, so the preset uses a wider box.
    cfg.grid = GridSpec{-90.0, 90.0, 3601};
    cfg.dt = 0.02;
    cfg.t_end = 30.0;
    return cfg;
}

DistributionState init_case1(const RunConfig& cfg, const MomentumGrid& grid) {
    validate_config(cfg);
    const auto& p = grid.nodes();
    const double c = cfg.constants.c;
    DistributionState s;
    s.t = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double b0 = cfg.case1.beta0[i];
        const double u1 = cfg.case1.U0[i];
        const double u0 = std::hypot(c, u1);
        const double log_A = std::log(cfg.species[i].degeneracy) -
                             3.0 * std::log(cfg.constants.h) + b0 * cfg.case1.mu0[i];
        const auto& p0 = grid.energies(i);
        s.f[i].resize(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j)
            s.f[i][j] = std::exp(log_A - b0 * (u0 * p0[j] - u1 * p[j]));
    }
    return s;
}

DistributionState init_case2(const RunConfig& cfg, const MomentumGrid& grid) {
    validate_config(cfg);
    const auto& p = grid.nodes();
    DistributionState s;
    s.t = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double a = cfg.case2.a[i], b = cfg.case2.b[i];
        const double apex = cfg.case2.apex[i], h = cfg.case2.height[i];
        if (a < grid.p_min() || b > grid.p_max())
            throw std::invalid_argument("init_case2: support outside the grid domain");
        s.f[i].assign(grid.size(), 0.0);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (p[j] < a || p[j] > b) continue;
            s.f[i][j] = p[j] <= apex ? h * (p[j] - a) / (apex - a)
                                     : h * (b - p[j]) / (b - apex);
        }
    }
    return s;
}

DistributionState make_initial_state(const RunConfig& cfg, const MomentumGrid& grid) {
    switch (cfg.scenario) {
        case ScenarioKind::case2: return init_case2(cfg, grid);
        case ScenarioKind::case1:
        case ScenarioKind::custom: return init_case1(cfg, grid);
    }
    throw std::logic_error("make_initial_state: unknown scenario");
}

}  // namespace rebgk
