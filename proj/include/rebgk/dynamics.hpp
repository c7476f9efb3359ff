#pragma once

#include <array>
#include <string>
#include <vector>

#include "rebgk/auxsolver.hpp"
#include "rebgk/core.hpp"

namespace rebgk {

/// Everything a stage evaluation needs.
struct SolverContext {
    Mixture mixture;
    PhysicalConstants constants;
    MomentumGrid grid;
    SolverOptions options;
};

using Field = std::array<std::vector<double>, 4>;

/// (nu_i / p0_i)(J_i - f_i) node-wise; pure, no parameter solve.
Field relaxation_rhs(const DistributionState& state, const Field& J, const SolverContext& ctx);

struct RhsResult {
    Field dfdt;
    AuxiliaryState aux;
};

/// Solves the attractor parameters for the current state and evaluates the
/// relaxation derivative.
RhsResult rhs(const DistributionState& state, const SolverContext& ctx);

/// One classical RK4 step with F(state) -> derivative field. The auxiliary
/// parameters are re-solved at every stage when F is the production rhs.
template <class F>
DistributionState rk4_step_with(const DistributionState& state, double dt, F&& deriv) {
    const std::size_t n = state.f[0].size();
    auto advanced = [&](const Field& k, double c) {
        DistributionState s;
        s.t = state.t + c * dt;
        for (std::size_t i = 0; i < 4; ++i) {
            s.f[i].resize(n);
            for (std::size_t j = 0; j < n; ++j) s.f[i][j] = state.f[i][j] + c * dt * k[i][j];
        }
        return s;
    };
    const Field k1 = deriv(state);
    const Field k2 = deriv(advanced(k1, 0.5));
    const Field k3 = deriv(advanced(k2, 0.5));
    const Field k4 = deriv(advanced(k3, 1.0));
    DistributionState out;
    out.t = state.t + dt;
    for (std::size_t i = 0; i < 4; ++i) {
        out.f[i].resize(n);
        for (std::size_t j = 0; j < n; ++j)
            out.f[i][j] = state.f[i][j] +
                          dt / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
    }
    return out;
}

DistributionState rk4_step(const DistributionState& state, double dt, const SolverContext& ctx);

/// H = sum_i quad(f_i ln(h^3 f_i / g_i)), with 0 ln 0 = 0.
double entropy(const DistributionState& state, const SolverContext& ctx);

struct Diagnostics {
    double t = 0.0;
    std::array<double, 4> N{};         // per-species numbers
    double N13 = 0.0, N14 = 0.0, N24 = 0.0;
    double E = 0.0, P = 0.0, H = 0.0;
    std::array<double, 4> dist{};      // max_p |f_i - J_i|
    AuxiliaryState aux;
};

Diagnostics diagnostics(const DistributionState& state, const SolverContext& ctx);

struct RunOptions {
    double dt = 0.01;
    double t_end = 10.0;
    int stride = 10;                    // diagnostics every stride steps
    std::vector<double> snapshot_times; // snapshots at the nearest step
};

struct RunResult {
    std::vector<Diagnostics> series;
    std::vector<DistributionState> snapshots;
    DistributionState final_state;
    bool completed = false;
    std::string error;
    std::vector<std::string> warnings;
    double min_value = 0.0;  // most negative f value seen during the run
};

/// Advances the state to t_end, collecting diagnostics every stride steps
/// (plus the initial and final ones). Aborts on step failure, returning the
/// partial series with completed = false. RK4 undershoot below -1e-13 is
/// reported as a warning, never clipped.
RunResult run(const DistributionState& initial, const RunOptions& opts,
              const SolverContext& ctx);

}  // namespace rebgk
