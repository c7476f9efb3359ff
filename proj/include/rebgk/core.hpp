#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace rebgk {

/// Unit system. Defaults are natural units c = h = k = 1; all formulas keep
/// the constants symbolic so SI-like values work as well.
struct PhysicalConstants {
    double c = 1.0;  // speed of light
    double h = 1.0;  // Planck constant
    double k = 1.0;  // Boltzmann constant
};

/// Per-species data for the reaction G1 + G2 <-> G3 + G4.
/// Species 1,2 are the reactants, 3,4 the products.
struct SpeciesParams {
    int index = 0;           // 1..4
    double mass = 1.0;       // rest mass m_i
    double degeneracy = 1.0; // g_{s_i}
    double rate = 1.0;       // nu_i = c m_i / tau_i
};

using Mixture = std::array<SpeciesParams, 4>;

/// Mass defect Delta m = m1 + m2 - m3 - m4 (nonzero values encode binding
/// energy).
double mass_defect(const Mixture& mix);

/// g1 g2 / (g3 g4), the target of the mass-action relation.
double degeneracy_ratio(const Mixture& mix);

void validate_constants(const PhysicalConstants& pc);
void validate_mixture(const Mixture& mix);

/// Truncated uniform 1-D momentum grid with trapezoid weights and the
/// per-species energy table p0_i(p) = sqrt((c m_i)^2 + p^2).
class MomentumGrid {
  public:
    MomentumGrid() = default;
    MomentumGrid(double p_min, double p_max, std::size_t n_nodes,
                 const Mixture& mix, const PhysicalConstants& pc);

    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    double dp() const { return dp_; }
    std::size_t size() const { return nodes_.size(); }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    /// Energies of species i (0-based), one entry per node.
    const std::vector<double>& energies(std::size_t i) const { return energies_[i]; }

  private:
    double p_min_ = 0.0, p_max_ = 0.0, dp_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::array<std::vector<double>, 4> energies_;
};

MomentumGrid make_grid(double p_min, double p_max, std::size_t n_nodes,
                       const Mixture& mix, const PhysicalConstants& pc);

/// The four grid-sampled distribution functions at one time.
struct DistributionState {
    double t = 0.0;
    std::array<std::vector<double>, 4> f;
};

/// Reporting operation: returns all invariant violations (empty if ok).
/// Checks size consistency, finiteness, non-negativity, and that at least
/// one species is not identically zero.
std::vector<std::string> validate_state(const DistributionState& state,
                                        const MomentumGrid& grid);

/// Two-component Minkowski vector (t, x) with signature (+, -).
struct FourVec {
    double t = 0.0;
    double x = 0.0;
};

inline double minkowski_dot(const FourVec& a, const FourVec& b) {
    return a.t * b.t - a.x * b.x;
}

}  // namespace rebgk
