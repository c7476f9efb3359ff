#include "rebgk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rebgk {

Field relaxation_rhs(const DistributionState& state, const Field& J, const SolverContext& ctx) {
    Field out;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& p0 = ctx.grid.energies(i);
        const double nu = ctx.mixture[i].rate;
        out[i].resize(state.f[i].size());
        for (std::size_t j = 0; j < state.f[i].size(); ++j)
            out[i][j] = nu * (J[i][j] - state.f[i][j]) / p0[j];
    }
    return out;
}

RhsResult rhs(const DistributionState& state, const SolverContext& ctx) {
    const SolverInputs in =
        gather_inputs(state, ctx.grid, ctx.mixture, ctx.constants, ctx.options.dimension);
    RhsResult r{{}, solve_parameters(in, ctx.options)};
    const Field J = evaluate_attractor(r.aux, ctx.mixture, ctx.constants, ctx.grid);
    r.dfdt = relaxation_rhs(state, J, ctx);
    return r;
}

DistributionState rk4_step(const DistributionState& state, double dt, const SolverContext& ctx) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    return rk4_step_with(state, dt,
                         [&](const DistributionState& s) { return rhs(s, ctx).dfdt; });
}

double entropy(const DistributionState& state, const SolverContext& ctx) {
    const double log_h3 = 3.0 * std::log(ctx.constants.h);
    double total = 0.0;
    std::vector<double> integrand(ctx.grid.size());
    for (std::size_t i = 0; i < 4; ++i) {
        const double log_g = std::log(ctx.mixture[i].degeneracy);
        for (std::size_t j = 0; j < ctx.grid.size(); ++j) {
            const double f = state.f[i][j];
            integrand[j] = f > 0.0 ? f * (std::log(f) + log_h3 - log_g) : 0.0;
        }
        total += quad(ctx.grid, integrand);
    }
    return total;
}

Diagnostics diagnostics(const DistributionState& state, const SolverContext& ctx) {
    Diagnostics d;
    d.t = state.t;
    const SolverInputs in =
        gather_inputs(state, ctx.grid, ctx.mixture, ctx.constants, ctx.options.dimension);
    d.aux = solve_parameters(in, ctx.options);
    const Field J = evaluate_attractor(d.aux, ctx.mixture, ctx.constants, ctx.grid);

    std::vector<double> integrand(ctx.grid.size());
    double E = 0.0, P = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        d.N[i] = in.moments[i].j0;
        const auto& p0 = ctx.grid.energies(i);
        const auto& p = ctx.grid.nodes();
        for (std::size_t j = 0; j < ctx.grid.size(); ++j) integrand[j] = p0[j] * state.f[i][j];
        E += quad(ctx.grid, integrand);
        for (std::size_t j = 0; j < ctx.grid.size(); ++j) integrand[j] = p[j] * state.f[i][j];
        P += quad(ctx.grid, integrand);
        double dist = 0.0;
        for (std::size_t j = 0; j < ctx.grid.size(); ++j)
            dist = std::max(dist, std::abs(state.f[i][j] - J[i][j]));
        d.dist[i] = dist;
    }
    d.N13 = d.N[0] + d.N[2];
    d.N14 = d.N[0] + d.N[3];
    d.N24 = d.N[1] + d.N[3];
    d.E = E;
    d.P = P;
    d.H = entropy(state, ctx);
    return d;
}

RunResult run(const DistributionState& initial, const RunOptions& opts,
              const SolverContext& ctx) {
    RunResult result;
    if (!(opts.dt > 0.0)) {
        result.error = "run: dt must be positive";
        return result;
    }
    const auto violations = validate_state(initial, ctx.grid);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "run: invalid initial state:";
        for (const auto& v : violations) os << " [" << v << "]";
        result.error = os.str();
        return result;
    }

    const long n_steps = std::lround(opts.t_end / opts.dt);
    auto wants_snapshot = [&](long step) {
        const double t = static_cast<double>(step) * opts.dt;
        for (double ts : opts.snapshot_times)
            if (std::abs(ts - t) <= 0.5 * opts.dt) return true;
        return false;
    };

    DistributionState state = initial;
    double worst_negative = 0.0;
    double worst_negative_t = 0.0;
    try {
        result.series.push_back(diagnostics(state, ctx));
        if (wants_snapshot(0)) result.snapshots.push_back(state);
        for (long step = 1; step <= n_steps; ++step) {
            state = rk4_step(state, opts.dt, ctx);
            state.t = static_cast<double>(step) * opts.dt;
            for (const auto& fi : state.f)
                for (double v : fi)
                    if (v < worst_negative) {
                        worst_negative = v;
                        worst_negative_t = state.t;
                    }
            if (step % opts.stride == 0 || step == n_steps)
                result.series.push_back(diagnostics(state, ctx));
            if (wants_snapshot(step)) result.snapshots.push_back(state);
        }
        result.completed = true;
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    result.min_value = worst_negative;
    if (worst_negative < -1e-13) {
        std::ostringstream os;
        os << "negativity undershoot: min f = " << worst_negative << " at t = "
           << worst_negative_t;
        result.warnings.push_back(os.str());
    }
    result.final_state = state;
    return result;
}

}  // namespace rebgk
