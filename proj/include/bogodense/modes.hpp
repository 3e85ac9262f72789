#pragma once

#include "bogodense/gpe.hpp"
#include "bogodense/grid.hpp"
#include "bogodense/params.hpp"

namespace bogodense {

/// The excited mode most strongly coupled to xi0:
/// xi1 = beta (xi0^2 - alpha2) xi0, beta = (alpha3 - alpha2^2)^(-1/2).
struct ModeOne {
    RadialField xi1;
    double beta = 0.0;
};

/// Every coefficient of the two-mode Hamiltonian, in hbar*omega / r0 units.
struct CouplingCoefficients {
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double beta = 0.0;
    double gamma = 0.0;  // [beta^2 (alpha4 - alpha2^3) - 2 alpha2] g
    double mu = 0.0;
    double mu1 = 0.0;
    double g01 = 0.0;    // g / beta, the anomalous ground <-> mode-1 coupling
    double g = 0.0;
    double nbar = 0.0;

    double g_alpha2() const noexcept { return g * alpha2; }
    double mu1_minus_mu() const noexcept { return mu1 - mu; }
};

/// alpha_n = integrate(xi0^(2n)), n in 1..4.
double moment(const GroundMode& gm, int n);

/// Throws Error(DegenerateMode) when alpha3 <= alpha2^2 (e.g. uniform xi0).
ModeOne build_xi1(const GroundMode& gm);

/// mu1 = mu + 1/2 integrate(xi1 beta [xi0^2 lap xi0 - lap(xi0^3)]).
CouplingCoefficients coefficients(const GroundMode& gm, const ModeOne& m1,
                                  const DimensionlessParams& dp);

/// Closed forms for the Thomas-Fermi profile in a harmonic trap:
/// mu = B/2, g alpha2 = 2B/(7 nbar), g/beta = 2B/(7 sqrt6 nbar),
/// gamma = 20B/(77 nbar), mu1 - mu = 63/(4B). Requires g > 0.
CouplingCoefficients thomas_fermi_coefficients(const DimensionlessParams& dp);

/// Everything needed downstream of the ground mode: solved xi0, xi1 and the
/// coefficient set.
struct ModeSet {
    GroundMode ground;
    ModeOne mode1;
    CouplingCoefficients coeffs;
};

ModeSet solve_modes(const DimensionlessParams& dp, const RadialGrid& grid,
                    const GpeOptions& opts = {});

}  // namespace bogodense
