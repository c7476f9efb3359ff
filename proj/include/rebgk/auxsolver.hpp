#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rebgk/auxstate.hpp"
#include "rebgk/core.hpp"
#include "rebgk/moments.hpp"

namespace rebgk {

struct SolverOptions {
    double beta_rel_tol = 1e-12;          // root tolerance on beta (solved tighter when cheap)
    double xi_threshold_factor = 1e-10;   // eps_xi = factor * c * max_i m_i
    double residual_tol = 1e-10;          // acceptable constraint residual
    int dimension = 1;
};

struct SolverInputs {
    std::array<SpeciesMoments, 4> moments;
    Mixture species;
    PhysicalConstants constants;
    int dimension = 1;
};

/// Moments of all four species of one state.
SolverInputs gather_inputs(const DistributionState& state, const MomentumGrid& grid,
                           const Mixture& mix, const PhysicalConstants& pc,
                           int dimension = 1);

class solve_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// (Z, U-tilde): U-tilde = (1/Z) sum nu_i n_i U_i^mu, normalized so
/// U.U = c^2 with U^0 > 0.
std::pair<double, FourVec> compute_U_tilde(const SolverInputs& in);

/// Sigma(beta) = sum (M_i/Mt_i) nu_i j0t_i  and  xi(beta) = sum_{+,+,-,-} M_i/Mt_i.
double sigma_of_beta(double beta, const SolverInputs& in);
double xi_of_beta(double beta, const SolverInputs& in);

/// Unique root of Z - Sigma on beta > 0 (Newton start point of the solve).
double find_beta_sharp(const SolverInputs& in, const SolverOptions& opts = {});

/// D_beta membership: max{-nu1 j0t1, -nu2 j0t2} < (Z-Sigma)/xi < min{nu3 j0t3, nu4 j0t4},
/// with xi(beta) = 0 counted as outside.
bool in_feasible_domain(double beta, const SolverInputs& in);

/// Phi(beta) = (Mt3 Mt4 / Mt1 Mt2) B1 B2 / (B3 B4); throws std::domain_error
/// outside D_beta.
double phi(double beta, const SolverInputs& in);

/// Full determination of the attractor parameters from the constraint
/// system plus the mass action law. Throws solve_error on numerical failure
/// or when the final residuals exceed opts.residual_tol.
AuxiliaryState solve_parameters(const SolverInputs& in, const SolverOptions& opts = {});

/// Grid samples of J_i = (g_i/h^3) exp(beta mu_i - beta U^mu p_mu).
std::array<std::vector<double>, 4> evaluate_attractor(const AuxiliaryState& aux,
                                                      const Mixture& mix,
                                                      const PhysicalConstants& pc,
                                                      const MomentumGrid& grid);

}  // namespace rebgk
