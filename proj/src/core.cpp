#include "rebgk/core.hpp"

#include <cmath>
#include <stdexcept>

namespace rebgk {

double mass_defect(const Mixture& mix) {
    return mix[0].mass + mix[1].mass - mix[2].mass - mix[3].mass;
}

double degeneracy_ratio(const Mixture& mix) {
    return mix[0].degeneracy * mix[1].degeneracy /
           (mix[2].degeneracy * mix[3].degeneracy);
}

void validate_constants(const PhysicalConstants& pc) {
    if (!(pc.c > 0.0) || !(pc.h > 0.0) || !(pc.k > 0.0))
        throw std::invalid_argument("physical constants must be strictly positive");
}

void validate_mixture(const Mixture& mix) {
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& s = mix[i];
        if (s.index != static_cast<int>(i) + 1)
            throw std::invalid_argument("species index must run 1..4 in order");
        if (!(s.mass > 0.0) || !std::isfinite(s.mass))
            throw std::invalid_argument("species mass must be positive");
        if (!(s.degeneracy > 0.0) || !std::isfinite(s.degeneracy))
            throw std::invalid_argument("species degeneracy must be positive");
        if (!(s.rate > 0.0) || !std::isfinite(s.rate))
            throw std::invalid_argument("species rate must be positive");
    }
}

MomentumGrid::MomentumGrid(double p_min, double p_max, std::size_t n_nodes,
                           const Mixture& mix, const PhysicalConstants& pc) {
    if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_min < p_max))
        throw std::invalid_argument("momentum grid needs finite p_min < p_max");
    if (n_nodes < 3)
        throw std::invalid_argument("momentum grid needs at least 3 nodes");
    validate_constants(pc);
    validate_mixture(mix);

    p_min_ = p_min;
    p_max_ = p_max;
    dp_ = (p_max - p_min) / static_cast<double>(n_nodes - 1);

    // Symmetric domains get exact +/- node pairs (and an exact 0 for odd
    // counts) by mirroring the lower half.
    nodes_.resize(n_nodes);
    if (p_min == -p_max) {
        for (std::size_t j = 0; j <= (n_nodes - 1) / 2; ++j) {
            const double s = static_cast<double>(j) / static_cast<double>(n_nodes - 1);
            const double x = p_min * (1.0 - 2.0 * s);
            nodes_[j] = x;
            nodes_[n_nodes - 1 - j] = -x;
        }
        if (n_nodes % 2 == 1) nodes_[(n_nodes - 1) / 2] = 0.0;
    } else {
        for (std::size_t j = 0; j < n_nodes; ++j) {
            const double s = static_cast<double>(j) / static_cast<double>(n_nodes - 1);
            nodes_[j] = p_min + (p_max - p_min) * s;
        }
        nodes_.back() = p_max;
    }

    weights_.assign(n_nodes, dp_);
    weights_.front() = 0.5 * dp_;
    weights_.back() = 0.5 * dp_;

    for (std::size_t i = 0; i < 4; ++i) {
        const double mc = pc.c * mix[i].mass;
        energies_[i].resize(n_nodes);
        for (std::size_t j = 0; j < n_nodes; ++j)
            energies_[i][j] = std::hypot(mc, nodes_[j]);
    }
}

MomentumGrid make_grid(double p_min, double p_max, std::size_t n_nodes,
                       const Mixture& mix, const PhysicalConstants& pc) {
    return MomentumGrid(p_min, p_max, n_nodes, mix, pc);
}

std::vector<std::string> validate_state(const DistributionState& state,
                                        const MomentumGrid& grid) {
    std::vector<std::string> violations;
    if (!std::isfinite(state.t))
        violations.push_back("time is not finite");
    bool any_nonzero = false;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& fi = state.f[i];
        if (fi.size() != grid.size()) {
            violations.push_back("species " + std::to_string(i + 1) +
                                 ": size does not match grid");
            continue;
        }
        for (std::size_t j = 0; j < fi.size(); ++j) {
            if (!std::isfinite(fi[j])) {
                violations.push_back("species " + std::to_string(i + 1) +
                                     ": non-finite value at node " + std::to_string(j));
                break;
            }
            if (fi[j] < 0.0) {
                violations.push_back("species " + std::to_string(i + 1) +
                                     ": negative value at node " + std::to_string(j));
                break;
            }
        }
        for (double v : fi)
            if (v > 0.0) { any_nonzero = true; break; }
    }
    if (!any_nonzero)
        violations.push_back("all species are identically zero");
    return violations;
}

}  // namespace rebgk
