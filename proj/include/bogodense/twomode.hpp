#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bogodense/banded.hpp"
#include "bogodense/modes.hpp"

namespace bogodense {

/// Number-conserving two-mode Hamiltonian on |M-n, n>, n = 0..M particles in
/// mode 1. Real symmetric with bandwidth 2; energies in hbar*omega.
struct TwoModeHamiltonian {
    std::size_t m_total = 0;
    CouplingCoefficients coeffs;
    std::vector<double> diag;  // M+1
    std::vector<double> off1;  // <n+1|H|n>, length M
    std::vector<double> off2;  // <n+2|H|n>, length M-1 (empty for M < 2)

    std::size_t dim() const noexcept { return m_total + 1; }
    linalg::SymmetricBandMatrix band() const;
    Eigen::MatrixXd dense() const;
};

TwoModeHamiltonian build_h01(const CouplingCoefficients& c, std::size_t m_total);

struct TwoModeState {
    std::size_t m_total = 0;
    Eigen::VectorXcd amplitudes;

    /// |M - n1, n1>
    static TwoModeState fock(std::size_t m_total, std::size_t n1 = 0);

    double norm() const { return amplitudes.norm(); }
    std::vector<double> probabilities() const;
};

/// <a1^dagger a1> = sum_n n |psi_n|^2
double mean_n1(const TwoModeState& s);
/// <a0^dagger a0> = sum_n (M - n) |psi_n|^2
double mean_n0(const TwoModeState& s);

enum class EvolutionMethod { Auto, Spectral, Stepped };

/// Largest M for which Auto picks the full eigendecomposition.
inline constexpr std::size_t kSpectralMaxParticles = 4000;

/// e^{-iHt} through a cached full eigendecomposition of the band matrix.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const TwoModeHamiltonian& h);

    std::size_t m_total() const noexcept { return m_total_; }
    const Eigen::VectorXd& energies() const noexcept { return eig_.values; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return eig_.vectors; }

    TwoModeState evolve(const TwoModeState& s0, double t) const;
    /// |<n|e^{-iHt}|s0>|^2 for n = 0..M.
    std::vector<double> probabilities(const TwoModeState& s0, double t) const;
    double mean_n1_at(const TwoModeState& s0, double t) const;

private:
    Eigen::VectorXcd project(const TwoModeState& s0) const;
    Eigen::VectorXcd evolve_projected(const Eigen::VectorXcd& c, double t) const;

    std::size_t m_total_;
    linalg::EigenPairs eig_;
};

/// Crank-Nicolson steps of size t/steps (unitary to rounding); throws
/// Error(IntegratorFailure) if the norm drifts by more than 1e-6.
TwoModeState evolve_stepped(const TwoModeHamiltonian& h, const TwoModeState& s0,
                            double t, std::size_t steps);

/// e^{-iHt}|s0>: spectral for M <= kSpectralMaxParticles under Auto, otherwise stepped.
TwoModeState evolve_exact(const TwoModeHamiltonian& h, const TwoModeState& s0, double t,
                          std::size_t steps, EvolutionMethod method = EvolutionMethod::Auto);

/// <n1>(t) from |M, 0> using only the states n1 <= K, with K doubled until the
/// probability on the top `kTailWidth` retained states stays below `tail_tol` at
/// every requested time. Exact to that tolerance and usable for M far beyond
/// kSpectralMaxParticles, since the populations stay near n1 = 0 there.
/// Throws Error(IntegratorFailure) if the block reaches kSpectralMaxParticles
/// without meeting the tolerance.
struct TruncatedTrace {
    std::vector<double> mean_n1;
    std::size_t block = 0;   // retained n1 states
    double tail = 0.0;       // largest tail probability seen
};
inline constexpr std::size_t kTailWidth = 16;
TruncatedTrace mean_n1_trace_truncated(const TwoModeHamiltonian& h, std::span<const double> times,
                                       double tail_tol = 1e-5);

/// <n1>(t) for each entry of `times`; parallel over time points.
std::vector<double> mean_n1_trace(const SpectralPropagator& prop, const TwoModeState& s0,
                                  std::span<const double> times);

/// First local minimum of <n1>(t) after t = 0, searched around `t_guess`
/// (the half period pi/omega'). Golden-section refinement on the exact propagator.
double first_return_time(const SpectralPropagator& prop, const TwoModeState& s0,
                         double t_guess);

/// <n1>(t) = c1 sin^2(w't) + c2 (cos(w't) - 1)^2 for |M, 0> at t = 0.
struct OscillationLaw {
    double c1 = 0.0;
    double c2 = 0.0;
    double omega_prime = 0.0;     // in units of omega; 0 when unstable
    double omega_prime_sq = 0.0;  // (hbar omega')^2 in (hbar omega)^2
    bool stable = false;

    /// Peak-to-trough scale used by the acceptance tolerances: c1 + 4 c2 bound.
    double amplitude() const noexcept { return c1 + 4.0 * c2; }
};

OscillationLaw oscillation_law(const CouplingCoefficients& c, double m_total);

/// Throws Error(InapplicableLaw) when the law is unstable.
double mean_n1_analytic(const OscillationLaw& law, double t);

/// Thomas-Fermi simplified forms with gamma ~ g alpha2 ~ 2 g/beta, nbar ~ n0:
/// c1 ~ [M + (M-N0)^2/4] (a/r0)^(4/5) / (28 N0^(1/5)), c2 ~ (M-N0)^2/(16 M),
/// omega' ~ 4 sqrt(M/N0).
struct SimplifiedLaw {
    double c1 = 0.0;
    double c2 = 0.0;
    double omega_prime = 0.0;
};

SimplifiedLaw simplified_law(double m_total, double n0, double a_over_r0);

namespace serial {
std::vector<double> mean_n1_trace(const SpectralPropagator& prop, const TwoModeState& s0,
                                  std::span<const double> times);
}  // namespace serial

}  // namespace bogodense
