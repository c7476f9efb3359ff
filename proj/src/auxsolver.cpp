#include "rebgk/auxsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rebgk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Context {
    const SolverInputs& in;
    std::array<double, 4> nu;
    std::array<double, 4> j0t;
    double Z;
    FourVec U;
    double lo;  // max{-nu1 j0t1, -nu2 j0t2}
    double hi;  // min{ nu3 j0t3,  nu4 j0t4}
    double log_gratio;

    explicit Context(const SolverInputs& inputs) : in(inputs) {
        for (std::size_t i = 0; i < 4; ++i) {
            nu[i] = inputs.species[i].rate;
            j0t[i] = inputs.moments[i].j0t;
            if (!(j0t[i] > 1e-300))
                throw solve_error("solver input degenerate: species " +
                                  std::to_string(i + 1) + " has vanishing moments");
        }
        auto zu = compute_U_tilde(inputs);
        Z = zu.first;
        U = zu.second;
        lo = std::max(-nu[0] * j0t[0], -nu[1] * j0t[1]);
        hi = std::min(nu[2] * j0t[2], nu[3] * j0t[3]);
        log_gratio = std::log(degeneracy_ratio(inputs.species));
    }

    std::array<double, 4> ratios(double beta) const {
        std::array<double, 4> r;
        for (std::size_t i = 0; i < 4; ++i)
            r[i] = moment_ratio(beta, in.species[i], in.constants, in.dimension);
        return r;
    }

    double sigma(const std::array<double, 4>& r) const {
        return r[0] * nu[0] * j0t[0] + r[1] * nu[1] * j0t[1] + r[2] * nu[2] * j0t[2] +
               r[3] * nu[3] * j0t[3];
    }

    static double xi(const std::array<double, 4>& r) { return r[0] + r[1] - r[2] - r[3]; }

    // (Z - Sigma)/xi, infinite when xi vanishes
    double W(double beta) const {
        const auto r = ratios(beta);
        const double x = xi(r);
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        return (Z - sigma(r)) / x;
    }

    bool in_domain(double beta) const {
        const double w = W(beta);
        return std::isfinite(w) && lo < w && w < hi;
    }

    std::array<double, 4> B(double w) const {
        return {j0t[0] + w / nu[0], j0t[1] + w / nu[1], j0t[2] - w / nu[2],
                j0t[3] - w / nu[3]};
    }

    double sum_log_Mtilde_ratio(double beta) const {
        return log_Mtilde(beta, in.species[2], in.constants, in.dimension) +
               log_Mtilde(beta, in.species[3], in.constants, in.dimension) -
               log_Mtilde(beta, in.species[0], in.constants, in.dimension) -
               log_Mtilde(beta, in.species[1], in.constants, in.dimension);
    }

    // ln Phi - ln(g1 g2 / g3 g4); NaN outside D_beta
    double log_phi_defect(double beta) const {
        const double w = W(beta);
        if (!std::isfinite(w) || !(lo < w && w < hi))
            return std::numeric_limits<double>::quiet_NaN();
        const auto b = B(w);
        return sum_log_Mtilde_ratio(beta) + std::log(b[0]) + std::log(b[1]) -
               std::log(b[2]) - std::log(b[3]) - log_gratio;
    }
};

// Safeguarded Newton-bisection on a sign-changing bracket [a, b]: Newton
// steps use a centered finite-difference derivative (h = 1e-6 x) and fall
// back to bisection whenever the step leaves the bracket or the derivative
// is unusable.
template <class F>
double solve_bracketed(F&& f, double a, double b, double fa, double fb, int max_iter = 200) {
    (void)fb;
    double x = 0.5 * (a + b);
    for (int it = 0; it < max_iter; ++it) {
        double fx = f(x);
        if (std::isnan(fx)) {
            x = 0.5 * (a + b);
            fx = f(x);
            if (std::isnan(fx))
                throw solve_error("root solve: objective undefined inside bracket");
        }
        if (fx == 0.0) return x;
        if ((fa < 0.0) == (fx < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        if (b - a <= 4.0 * kEps * std::max(std::abs(a), std::abs(b))) break;
        const double h = 1e-6 * std::abs(x);
        const double df = (f(x + h) - f(x - h)) / (2.0 * h);
        double xn = x - fx / df;
        if (!std::isfinite(xn) || xn <= a || xn >= b) xn = 0.5 * (a + b);
        if (std::abs(xn - x) <= 0.5 * kEps * std::abs(x)) return xn;
        x = xn;
    }
    return 0.5 * (a + b);
}

}  // namespace

double ConstraintResiduals::max() const {
    return std::max({pair13, pair14, pair24, energy, momentum, mass_action});
}

SolverInputs gather_inputs(const DistributionState& state, const MomentumGrid& grid,
                           const Mixture& mix, const PhysicalConstants& pc, int dimension) {
    SolverInputs in;
    in.species = mix;
    in.constants = pc;
    in.dimension = dimension;
    for (std::size_t i = 0; i < 4; ++i)
        in.moments[i] = species_moments(state.f[i], grid, mix[i], pc);
    return in;
}

std::pair<double, FourVec> compute_U_tilde(const SolverInputs& in) {
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        s0 += in.species[i].rate * in.moments[i].j0;
        s1 += in.species[i].rate * in.moments[i].j1t;
    }
    const double z2 = (s0 - s1) * (s0 + s1);
    if (!(z2 > 0.0) || !(s0 > 0.0))
        throw solve_error("compute_U_tilde: flow vector is not future-directed timelike");
    const double Z = std::sqrt(z2);
    const double c = in.constants.c;
    return {Z, FourVec{c * s0 / Z, c * s1 / Z}};
}

double sigma_of_beta(double beta, const SolverInputs& in) {
    Context ctx(in);
    return ctx.sigma(ctx.ratios(beta));
}

double xi_of_beta(double beta, const SolverInputs& in) {
    Context ctx(in);
    return Context::xi(ctx.ratios(beta));
}

namespace {

double find_beta_sharp_impl(const Context& ctx, const SolverInputs& in) {
    // Z - Sigma is increasing: -inf as beta -> 0, >= 0 as beta -> inf.
    auto g = [&](double beta) { return ctx.Z - ctx.sigma(ctx.ratios(beta)); };
    double a = 1e-3, b = 1e3;
    double ga = g(a), gb = g(b);
    int guard = 0;
    while (ga > 0.0) {
        a *= 0.5;
        ga = g(a);
        if (++guard > 200 || a < 1e-290)
            throw solve_error("find_beta_sharp: no lower bracket");
    }
    guard = 0;
    while (gb < 0.0) {
        b *= 2.0;
        gb = g(b);
        if (++guard > 60)
            throw solve_error("find_beta_sharp: no sign change found for Z - Sigma");
    }
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    (void)in;
    return solve_bracketed(g, a, b, ga, gb);
}

}  // namespace

double find_beta_sharp(const SolverInputs& in, const SolverOptions&) {
    Context ctx(in);
    return find_beta_sharp_impl(ctx, in);
}

bool in_feasible_domain(double beta, const SolverInputs& in) {
    if (!(beta > 0.0)) return false;
    return Context(in).in_domain(beta);
}

double phi(double beta, const SolverInputs& in) {
    Context ctx(in);
    const double d = ctx.log_phi_defect(beta);
    if (std::isnan(d)) throw std::domain_error("phi: beta outside the feasible domain");
    return std::exp(d + ctx.log_gratio);
}

namespace {

struct BetaSolution {
    double beta;
    std::array<double, 4> B;
    SolverBranch branch;
};

// Generic branch: walk from beta_sharp in the direction that moves
// ln Phi toward the target (sign(Phi') = sign(xi)), bracket the crossing
// inside D_beta, then solve. Near the D_beta edge B_i -> 0 makes ln Phi
// diverge, so a sign change always appears before the domain ends.
BetaSolution solve_generic(const Context& ctx, double beta_sharp, double xi_sharp) {
    auto F = [&](double beta) { return ctx.log_phi_defect(beta); };
    const double f0 = F(beta_sharp);
    if (std::isnan(f0))
        throw solve_error("solve_parameters: beta_sharp outside D_beta");
    // The residual moved into the energy-momentum relation is |xi| dW,
    // negligible against Z, while the mass-action defect drops to round-off:
    // Phi can be steep in beta (1/(nu_i B_i) factors), so even an
    // ulp-converged beta root may leave a mass-action residual above 1e-12.
    auto polish_W = [&](double beta, double w) {
        const double mtpart = ctx.sum_log_Mtilde_ratio(beta);
        for (int it = 0; it < 60; ++it) {
            const auto b = ctx.B(w);
            if (!(b[0] > 0.0 && b[1] > 0.0 && b[2] > 0.0 && b[3] > 0.0)) break;
            const double g = mtpart + std::log(b[0]) + std::log(b[1]) - std::log(b[2]) -
                             std::log(b[3]) - ctx.log_gratio;
            const double gp = 1.0 / (ctx.nu[0] * b[0]) + 1.0 / (ctx.nu[1] * b[1]) +
                              1.0 / (ctx.nu[2] * b[2]) + 1.0 / (ctx.nu[3] * b[3]);
            double wn = w - g / gp;
            if (wn <= ctx.lo) wn = 0.5 * (w + ctx.lo);
            if (wn >= ctx.hi) wn = 0.5 * (w + ctx.hi);
            if (wn == w || std::abs(g) <= 1e-15) break;
            w = wn;
        }
        return w;
    };

    double beta = beta_sharp;
    if (f0 != 0.0) {
        const double dir = (f0 < 0.0 ? 1.0 : -1.0) * (xi_sharp > 0.0 ? 1.0 : -1.0);
        double b_in = beta_sharp, f_in = f0;
        double step = 0.05;
        double b_lo = 0.0, b_hi = 0.0, f_lo = 0.0, f_hi = 0.0;
        bool bracketed = false;
        for (int it = 0; it < 600; ++it) {
            double b_try = dir > 0.0 ? b_in * (1.0 + step) : b_in / (1.0 + step);
            double f_try = F(b_try);
            if (std::isnan(f_try)) {
                // domain edge between b_in and b_try: shrink toward it until
                // the diverging ln Phi flips sign
                double e_in = b_in, e_out = b_try;
                bool flipped = false;
                for (int k = 0; k < 300; ++k) {
                    const double mid = 0.5 * (e_in + e_out);
                    const double fm = F(mid);
                    if (std::isnan(fm)) {
                        e_out = mid;
                    } else if ((fm < 0.0) == (f_in < 0.0)) {
                        e_in = mid;
                        b_in = mid;
                        f_in = fm;
                    } else {
                        b_lo = std::min(b_in, mid);
                        b_hi = std::max(b_in, mid);
                        f_lo = b_in < mid ? f_in : fm;
                        f_hi = b_in < mid ? fm : f_in;
                        flipped = true;
                        break;
                    }
                    if (e_out - e_in <= kEps * e_in && e_in - e_out <= kEps * e_in) break;
                }
                if (!flipped)
                    throw solve_error(
                        "solve_parameters: Phi does not cross the degeneracy ratio "
                        "inside D_beta");
                bracketed = true;
                break;
            }
            if ((f_try < 0.0) != (f_in < 0.0)) {
                b_lo = std::min(b_in, b_try);
                b_hi = std::max(b_in, b_try);
                f_lo = b_in < b_try ? f_in : f_try;
                f_hi = b_in < b_try ? f_try : f_in;
                bracketed = true;
                break;
            }
            b_in = b_try;
            f_in = f_try;
            step = std::min(2.0 * step, 4.0);
        }
        if (!bracketed)
            throw solve_error("solve_parameters: failed to bracket the Phi crossing");
        beta = solve_bracketed(F, b_lo, b_hi, f_lo, f_hi);
    }
    const double w = polish_W(beta, ctx.W(beta));
    return {beta, ctx.B(w), SolverBranch::generic};
}

// Non-generic branch (xi(beta_sharp) ~ 0): fix beta = beta_sharp and solve
// the mass-action relation for E = Mt1 A1 by bisection; the left side is
// increasing in E from 0 to infinity on D_mu.
BetaSolution solve_non_generic(const Context& ctx, double beta_sharp) {
    const auto& nu = ctx.nu;
    const auto& j0t = ctx.j0t;
    const double mt_ratio = ctx.sum_log_Mtilde_ratio(beta_sharp);
    auto defect = [&](double E) {
        const double d1 = E - j0t[0];
        const double b2 = j0t[1] + nu[0] / nu[1] * d1;
        const double b3 = j0t[2] - nu[0] / nu[2] * d1;
        const double b4 = j0t[3] - nu[0] / nu[3] * d1;
        return mt_ratio + std::log(E) + std::log(b2) - std::log(b3) - std::log(b4) -
               ctx.log_gratio;
    };
    double e_lo = std::max(0.0, j0t[0] - nu[1] / nu[0] * j0t[1]);
    double e_hi = j0t[0] + std::min(nu[2] / nu[0] * j0t[2], nu[3] / nu[0] * j0t[3]);
    // open interval: nudge off the endpoints where the logs diverge
    double a = e_lo + 1e-14 * (e_hi - e_lo), b = e_hi - 1e-14 * (e_hi - e_lo);
    double fa = defect(a), fb = defect(b);
    int guard = 0;
    while (!(fa < 0.0) && ++guard < 60) {
        a = e_lo + (a - e_lo) * 0.125;
        fa = defect(a);
    }
    guard = 0;
    while (!(fb > 0.0) && ++guard < 60) {
        b = e_hi - (e_hi - b) * 0.125;
        fb = defect(b);
    }
    if (!(fa < 0.0 && fb > 0.0))
        throw solve_error("solve_parameters: non-generic mass-action bisection failed");
    const double E = solve_bracketed(defect, a, b, fa, fb, 300);
    const double d1 = E - j0t[0];
    return {beta_sharp,
            {E, j0t[1] + nu[0] / nu[1] * d1, j0t[2] - nu[0] / nu[2] * d1,
             j0t[3] - nu[0] / nu[3] * d1},
            SolverBranch::non_generic};
}

}  // namespace

AuxiliaryState solve_parameters(const SolverInputs& in, const SolverOptions& opts) {
    Context ctx(in);
    const double beta_sharp = find_beta_sharp_impl(ctx, in);
    const double xi_sharp = Context::xi(ctx.ratios(beta_sharp));

    double max_mass = 0.0;
    for (const auto& s : in.species) max_mass = std::max(max_mass, s.mass);
    const double eps_xi = opts.xi_threshold_factor * in.constants.c * max_mass;

    const BetaSolution sol = std::abs(xi_sharp) <= eps_xi
                                 ? solve_non_generic(ctx, beta_sharp)
                                 : solve_generic(ctx, beta_sharp, xi_sharp);

    AuxiliaryState aux;
    aux.beta = sol.beta;
    aux.U = ctx.U;
    aux.Z = ctx.Z;
    aux.branch = sol.branch;
    aux.beta_sharp = beta_sharp;
    aux.xi_at_beta_sharp = xi_sharp;

    const double log_h3 = 3.0 * std::log(in.constants.h);
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(sol.B[i] > 0.0))
            throw solve_error("solve_parameters: feasibility lost, B_" +
                              std::to_string(i + 1) + " <= 0");
        const double log_A =
            std::log(sol.B[i]) - log_Mtilde(sol.beta, in.species[i], in.constants, in.dimension);
        aux.mu[i] = (log_A + log_h3 - std::log(in.species[i].degeneracy)) / sol.beta;
    }

    // residuals of the full constraint system, recomputed from the outputs
    const auto r = ctx.ratios(sol.beta);
    std::array<double, 4> AM{}, AMt{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double log_A = std::log(in.species[i].degeneracy) - log_h3 + sol.beta * aux.mu[i];
        AMt[i] = std::exp(log_A + log_Mtilde(sol.beta, in.species[i], in.constants, in.dimension));
        AM[i] = AMt[i] * r[i];
    }
    const auto& nu = ctx.nu;
    auto pair_resid = [&](int i, int j) {
        const double num = nu[i] * (AMt[i] - ctx.j0t[i]) + nu[j] * (AMt[j] - ctx.j0t[j]);
        return std::abs(num) / (nu[i] * ctx.j0t[i] + nu[j] * ctx.j0t[j]);
    };
    aux.residuals.pair13 = pair_resid(0, 2);
    aux.residuals.pair14 = pair_resid(0, 3);
    aux.residuals.pair24 = pair_resid(1, 3);

    double s0 = 0.0, s1 = 0.0, sAM = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        s0 += nu[i] * in.moments[i].j0;
        s1 += nu[i] * in.moments[i].j1t;
        sAM += nu[i] * AM[i];
    }
    const double c = in.constants.c;
    aux.residuals.energy = std::abs(sAM * aux.U.t / c - s0) / s0;
    aux.residuals.momentum = std::abs(sAM * aux.U.x / c - s1) / s0;

    double mu_scale = 1.0;
    for (double m : aux.mu) mu_scale = std::max(mu_scale, std::abs(m));
    aux.residuals.mass_action = std::abs(aux.mu[0] + aux.mu[1] - aux.mu[2] - aux.mu[3]) / mu_scale;

    if (!(aux.residuals.max() <= opts.residual_tol)) {
        std::ostringstream os;
        os << "solve_parameters: constraint residuals above tolerance: pair13="
           << aux.residuals.pair13 << " pair14=" << aux.residuals.pair14
           << " pair24=" << aux.residuals.pair24 << " energy=" << aux.residuals.energy
           << " momentum=" << aux.residuals.momentum
           << " mass_action=" << aux.residuals.mass_action;
        throw solve_error(os.str());
    }
    return aux;
}

std::array<std::vector<double>, 4> evaluate_attractor(const AuxiliaryState& aux,
                                                      const Mixture& mix,
                                                      const PhysicalConstants& pc,
                                                      const MomentumGrid& grid) {
    const auto& p = grid.nodes();
    std::array<std::vector<double>, 4> J;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& p0 = grid.energies(i);
        const double log_A =
            std::log(mix[i].degeneracy) - 3.0 * std::log(pc.h) + aux.beta * aux.mu[i];
        J[i].resize(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double ex = log_A - aux.beta * (aux.U.t * p0[j] - aux.U.x * p[j]);
            if (ex > 709.0)
                throw std::runtime_error("evaluate_attractor: exponent overflow");
            J[i][j] = std::exp(ex);
        }
    }
    return J;
}

}  // namespace rebgk
