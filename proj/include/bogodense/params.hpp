#pragma once

namespace bogodense {

/// Reduced Planck constant, CODATA 2018 [J s].
inline constexpr double kHbar = 1.054571817e-34;

inline constexpr double kPi = 3.14159265358979323846;

/// Trap, atom and interaction constants in SI units.
///
/// `trap_frequency_hz` is an ordinary frequency; the trap angular frequency
/// is 2*pi times it.
struct PhysicalParams {
    double mass_kg = 1.44e-25;
    double scattering_length_m = 10e-9;
    double trap_frequency_hz = 1000.0;
    double nbar = 1e5;  // N-bar, the occupation entering the nonlinear term
    double n0 = 1e5;    // mean ground-mode occupation
};

/// Rubidium in a 1 kHz spherical trap with 1e5 atoms (the profile-figure setup).
PhysicalParams figure1_params() noexcept;

/// Internal unit system: lengths in r0 = sqrt(hbar/(m omega)), energies in hbar*omega,
/// times in 1/omega.
struct DimensionlessParams {
    double r0_m = 1.0;          // oscillator length [m]
    double omega_rad_s = 1.0;   // trap angular frequency [rad/s]
    double g = 0.0;             // 4 pi a_sc / r0: contact strength in hbar*omega*r0^3
    double b_tf = 0.0;          // B = (15 nbar a_sc / r0)^(2/5)
    double nbar = 1.0;
    double n0 = 1.0;

    double a_over_r0() const noexcept { return g / (4.0 * kPi); }
    double energy_unit_j() const noexcept { return kHbar * omega_rad_s; }
};

/// Throws Error(InvalidParameter) on mass <= 0, frequency <= 0, a_sc < 0,
/// nbar < 1 or n0 <= 0.
DimensionlessParams to_dimensionless(const PhysicalParams& p);

/// Builds dimensionless parameters directly from the contact strength.
/// r0 and omega are left at 1 (pure internal units).
DimensionlessParams from_coupling(double g, double nbar, double n0);

/// Same trap and atom, different N-bar (b_tf recomputed).
DimensionlessParams with_nbar(const DimensionlessParams& dp, double nbar, double n0);

double thomas_fermi_b(double g, double nbar) noexcept;

}  // namespace bogodense
