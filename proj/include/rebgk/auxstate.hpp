#pragma once

#include <array>

#include "rebgk/core.hpp"

namespace rebgk {

enum class SolverBranch { generic, non_generic };

/// Relative residuals of the seven conservation constraints plus the mass
/// action law, evaluated on the returned parameters.
struct ConstraintResiduals {
    double pair13 = 0.0;
    double pair14 = 0.0;
    double pair24 = 0.0;
    double energy = 0.0;
    double momentum = 0.0;
    double mass_action = 0.0;

    double max() const;
};

/// Solved attractor parameters (beta-tilde, mu-tilde_i, U-tilde) plus solver
/// branch metadata.
struct AuxiliaryState {
    double beta = 0.0;
    std::array<double, 4> mu{};
    FourVec U{};
    SolverBranch branch = SolverBranch::generic;
    double beta_sharp = 0.0;
    double xi_at_beta_sharp = 0.0;
    double Z = 0.0;
    ConstraintResiduals residuals{};
};

}  // namespace rebgk
