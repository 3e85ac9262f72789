#pragma once

#include <string_view>
#include <vector>

#include "bogodense/grid.hpp"
#include "bogodense/params.hpp"

namespace bogodense {

enum class GroundMethod { Numeric, ThomasFermi, Gaussian };

std::string_view to_string(GroundMethod m) noexcept;

/// Condensate ground mode xi0 (real, nonnegative, unit norm) with its
/// chemical potential in hbar*omega.
struct GroundMode {
    RadialField xi0;
    double mu = 0.0;
    double nbar = 0.0;
    GroundMethod method = GroundMethod::Numeric;
    double residual = 0.0;  // GPE residual at return (numeric only)
    int iterations = 0;
    std::vector<double> energy_trace;  // filled when GpeOptions::record_energy
};

struct GpeOptions {
    double tol = 1e-8;
    int max_iter = 50000;
    double dtau = 0.05;  // imaginary-time step of the backward-Euler iteration
    bool record_energy = false;
};

/// Ground state of [-1/2 lap + r^2/2 + g nbar xi0^2] xi0 = mu xi0 by
/// normalized backward-Euler imaginary-time propagation.
///
/// Throws Error(UnsupportedRegime) for g < 0, Error(InvalidParameter) for
/// tol <= 0, and ConvergenceError if the residual stays above tol.
GroundMode solve_gpe(const DimensionlessParams& dp, const RadialGrid& grid,
                     const GpeOptions& opts = {});

/// xi0 = sqrt(max(0, mu_tf - r^2/2) / (nbar g)), mu_tf = B/2. Requires g > 0.
GroundMode thomas_fermi_mode(const DimensionlessParams& dp, const RadialGrid& grid);

/// Harmonic-oscillator ground state pi^(-3/4) exp(-r^2/2), mu = 3/2.
GroundMode gaussian_mode(const RadialGrid& grid);

/// || [-1/2 lap + r^2/2 + g nbar xi0^2 - mu] xi0 ||_2
double gpe_residual(const GroundMode& gm, const DimensionlessParams& dp);

/// Mean-field energy per particle <xi0|-1/2 lap + r^2/2|xi0> + (g nbar/2) alpha_2.
double gpe_energy(const RadialField& xi0, const DimensionlessParams& dp);

double thomas_fermi_radius(const DimensionlessParams& dp) noexcept;

}  // namespace bogodense
