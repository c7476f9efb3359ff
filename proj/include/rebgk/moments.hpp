#pragma once

#include <array>
#include <vector>

#include "rebgk/auxstate.hpp"
#include "rebgk/core.hpp"

namespace rebgk {

/// Trapezoid sum of values over the grid (compensated summation).
double quad(const MomentumGrid& grid, const std::vector<double>& values);

/// Scalar and vector moments of one grid distribution together with its
/// Eckart decomposition N^mu = n U^mu.
struct SpeciesMoments {
    double j0 = 0.0;   // int f dp
    double j0t = 0.0;  // int f dp/p0
    double j1t = 0.0;  // int p f dp/p0
    double n = 0.0;    // Eckart number density
    FourVec N{};       // particle four-flow c (j0, j1t)
    FourVec U{};       // Eckart four-velocity, U.U = c^2
};

SpeciesMoments species_moments(const std::vector<double>& f, const MomentumGrid& grid,
                               const SpeciesParams& sp, const PhysicalConstants& pc);

/// Rest-frame Juttner moment functionals in Bessel closed form.
///
/// dimension 1:  M = 2 m c K1(z),               Mt = 2 K0(z)
/// dimension 3:  M = 4 pi (mc)^2 K2(z) / (c b), Mt = 4 pi (mc) K1(z) / (c b)
/// with z = m c^2 b.  ratio = M/Mt and the logarithms are evaluated through
/// scaled Bessel functions so they stay finite where M itself underflows.
struct JuttnerMoments {
    int dimension = 1;
    double M = 0.0;
    double Mtilde = 0.0;
    double ratio = 0.0;       // M / Mtilde  (> c m, decreasing in beta)
    double log_M = 0.0;
    double log_Mtilde = 0.0;
};

JuttnerMoments juttner_M(double beta, const SpeciesParams& sp,
                         const PhysicalConstants& pc, int dimension);

/// M/Mt and ln Mt alone (the pieces the parameter solver iterates on).
double moment_ratio(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
                    int dimension);
double log_Mtilde(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
                  int dimension);
double log_M(double beta, const SpeciesParams& sp, const PhysicalConstants& pc,
             int dimension);

/// Lab-frame grid moments of the attractor belonging to aux: quad(J),
/// quad(J/p0), quad(p J/p0).  For wide grids these match A Mt and
/// (A M / c) U^mu by Lorentz invariance of dp/p0.
struct AttractorLabMoments {
    double j0 = 0.0;
    double j0t = 0.0;
    double j1t = 0.0;
};

std::array<AttractorLabMoments, 4> juttner_moments_lab(const AuxiliaryState& aux,
                                                       const Mixture& mix,
                                                       const PhysicalConstants& pc,
                                                       const MomentumGrid& grid);

}  // namespace rebgk
