#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "rebgk/auxsolver.hpp"
#include "rebgk/core.hpp"

namespace rebgk {

enum class ScenarioKind { case1, case2, custom };

/// Per-species Juttner initial data f0 = (g/h^3) exp(b0 mu0 - b0 U^mu p_mu)
/// with U^mu = (sqrt(c^2 + U^2), U). Also used by the custom scenario.
struct ScenarioCase1 {
    std::array<double, 4> mu0{};
    std::array<double, 4> U0{};
    std::array<double, 4> beta0{};
};

/// Isosceles-triangle initial data: zero outside [a_i, b_i], rising linearly
/// to height_i at the apex (midpoint by default), falling linearly back to 0.
struct ScenarioCase2 {
    std::array<double, 4> a{};
    std::array<double, 4> b{};
    std::array<double, 4> height{};
    std::array<double, 4> apex{};
};

struct GridSpec {
    double p_min = -30.0;
    double p_max = 30.0;
    std::size_t n_nodes = 1201;
};

struct RunConfig {
    PhysicalConstants constants;
    Mixture species{};
    GridSpec grid;
    ScenarioKind scenario = ScenarioKind::case1;
    ScenarioCase1 case1;
    ScenarioCase2 case2;
    double dt = 0.01;
    double t_end = 10.0;
    int stride = 10;
    std::string output_dir = "out";
    SolverOptions solver;
};

void validate_config(const RunConfig& cfg);

/// Presets for the two reference experiments.
RunConfig default_case1_config();
RunConfig default_case2_config();

DistributionState init_case1(const RunConfig& cfg, const MomentumGrid& grid);
DistributionState init_case2(const RunConfig& cfg, const MomentumGrid& grid);

/// Dispatches on cfg.scenario (custom uses the case1 functional form with
/// the configured parameters).
DistributionState make_initial_state(const RunConfig& cfg, const MomentumGrid& grid);

}  // namespace rebgk
