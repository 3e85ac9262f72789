#pragma once

#include <cstddef>
#include <vector>

#include "bogodense/gpe.hpp"
#include "bogodense/grid.hpp"
#include "bogodense/modes.hpp"

namespace bogodense {

/// One positive-norm l = 0 Bogoliubov-de Gennes solution.
/// U, V are u, v with their xi0 component removed; integrate(U^2 - V^2) = 1.
struct QuasiparticleMode {
    double omega = 0.0;  // hbar omega_k in hbar*omega
    RadialField u;
    RadialField v;
    RadialField U;
    RadialField V;
};

struct QuasiparticleSpectrum {
    std::vector<QuasiparticleMode> modes;  // ascending omega
    double c_const = 0.0;                  // C = -sum_k omega_k integrate(V_k^2)
    double nbar = 0.0;
};

/// Decomposition of (a0^dagger/sqrt(nbar)) a1 = sum_k p_k b_k - q_k b_k^dagger.
struct Mode1Decomposition {
    std::vector<double> p;  // integrate(xi1 U_k)
    std::vector<double> q;  // integrate(xi1 V_k)
    double residual = 0.0;  // 1 - sum_k (p_k^2 - q_k^2)

    /// sum_{k >= first} (p_k^2 - q_k^2), k counted from 1.
    double weight_from(std::size_t first) const;
};

/// Zero-mode threshold: eigenpairs with omega below this are the xi0 direction.
inline constexpr double kZeroModeThreshold = 1e-3;

/// Lowest `num_modes` quasiparticles of
///   Lt u - g nbar xi0^2 v = w u,  Lt v - g nbar xi0^2 u = -w v,
///   Lt = -1/2 lap + r^2/2 - mu + 2 g nbar xi0^2.
/// Solved through (Lt - Q)(Lt + Q)(u - v) = w^2 (u - v), Q = g nbar xi0^2,
/// symmetrized with the Cholesky factor of Lt + Q.
/// Throws Error(InsufficientModes) if fewer positive modes are found.
QuasiparticleSpectrum solve_bdg(const GroundMode& gm, const DimensionlessParams& dp,
                                std::size_t num_modes);

/// f - xi0 integrate(xi0 f)
RadialField project_orthogonal(const RadialField& f, const GroundMode& gm);

Mode1Decomposition decompose_mode1(const ModeOne& m1, const QuasiparticleSpectrum& spec);

/// The literal double sum -sum_{k,j} omega_k integrate(V_j v_k) over retained modes.
double c_const_double_sum(const QuasiparticleSpectrum& spec);

}  // namespace bogodense
