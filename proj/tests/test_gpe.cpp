#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bogodense/gpe.hpp"
#include "bogodense/modes.hpp"
#include "test_support.hpp"

using namespace bogodense;

namespace {

constexpr double kPiT = std::numbers::pi;

// alpha_n of the Thomas-Fermi profile xi^2 = (R^2 - r^2)/(2 nbar g):
// 4 pi (2 nbar g)^(-n) int_0^R (R^2 - r^2)^n r^2 dr = 4 pi (2 nbar g)^(-n) R^(2n+3) B(3/2, n+1)/2
double tf_moment_oracle(const DimensionlessParams& dp, int n) {
    const double r2 = dp.b_tf;  // R^2 = 2 mu = B
    return 4.0 * kPiT * std::pow(2.0 * dp.nbar * dp.g, -n) * std::pow(r2, n + 1.5) * 0.5 *
           std::beta(1.5, n + 1.0);
}

DimensionlessParams fig1() { return to_dimensionless(figure1_params()); }

DimensionlessParams noninteracting() {
    PhysicalParams p = figure1_params();
    p.scattering_length_m = 0.0;
    return to_dimensionless(p);
}

}  // namespace

TEST_SUITE("gpe") {

TEST_CASE("non-interacting ground state is the oscillator Gaussian") {
    const DimensionlessParams dp = noninteracting();
    const RadialGrid grid = default_grid(dp);
    const GroundMode gm = solve_gpe(dp, grid);
    CHECK(gm.method == GroundMethod::Numeric);
    CHECK(gm.mu == doctest::Approx(1.5).epsilon(1e-4 / 1.5));
    CHECK(gm.residual <= 1e-8);
    const GroundMode ref = gaussian_mode(grid);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) diff = std::max(diff, std::abs(gm.xi0[i] - ref.xi0[i]));
    CHECK(diff < 1e-4);
}

TEST_CASE("Thomas-Fermi profile is normalized and vanishes at its radius") {
    const DimensionlessParams dp = fig1();
    const RadialGrid grid = default_grid(dp);
    const GroundMode tf = thomas_fermi_mode(dp, grid);
    CHECK(tf.method == GroundMethod::ThomasFermi);
    CHECK(tf.mu == doctest::Approx(dp.b_tf / 2.0));
    CHECK(integrate(hadamard(tf.xi0, tf.xi0)) == doctest::Approx(1.0).epsilon(1e-4));
    const double radius = std::sqrt(2.0 * tf.mu);
    CHECK(radius == doctest::Approx(8.49).epsilon(2e-3));
    CHECK(thomas_fermi_radius(dp) == doctest::Approx(radius));
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.r(i) > radius * (1.0 + 1e-12)) CHECK(tf.xi0[i] == 0.0);
    CHECK(tf.xi0[0] == doctest::Approx(std::sqrt(tf.mu / (dp.nbar * dp.g))).epsilon(1e-6));
    CHECK(tf.xi0[0] == doctest::Approx(0.0313).epsilon(5e-3));
}

TEST_CASE("Thomas-Fermi moments match the Beta-function closed form") {
    const DimensionlessParams dp = fig1();
    const RadialGrid fine(2.0 * std::sqrt(dp.b_tf), 40000);
    const GroundMode tf = thomas_fermi_mode(dp, fine);
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(moment(tf, n) == doctest::Approx(tf_moment_oracle(dp, n)).epsilon(1e-4));
    }
    const CouplingCoefficients c = thomas_fermi_coefficients(dp);
    CHECK(c.alpha2 == doctest::Approx(tf_moment_oracle(dp, 2)).epsilon(1e-12));
    CHECK(c.alpha3 == doctest::Approx(tf_moment_oracle(dp, 3)).epsilon(1e-12));
    CHECK(c.alpha4 == doctest::Approx(tf_moment_oracle(dp, 4)).epsilon(1e-12));
}

TEST_CASE("interacting ground state converges and beats the Thomas-Fermi energy") {
    const DimensionlessParams dp = fig1();
    const RadialGrid grid = default_grid(dp);
    GpeOptions opts;
    opts.record_energy = true;
    const GroundMode gm = solve_gpe(dp, grid, opts);
    CHECK(gm.residual <= opts.tol);
    CHECK(gpe_residual(gm, dp) == doctest::Approx(gm.residual).epsilon(1e-6));
    CHECK(integrate(hadamard(gm.xi0, gm.xi0)) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : gm.xi0.values) CHECK(x >= 0.0);
    CHECK(gm.mu == doctest::Approx(dp.b_tf / 2.0).epsilon(0.01));

    REQUIRE(gm.energy_trace.size() == static_cast<std::size_t>(gm.iterations) + 1);
    for (std::size_t i = 1; i < gm.energy_trace.size(); ++i)
        CHECK(gm.energy_trace[i] <= gm.energy_trace[i - 1] + 1e-12 * std::abs(gm.energy_trace[i - 1]));
    const GroundMode tf = thomas_fermi_mode(dp, grid);
    CHECK(gpe_energy(gm.xi0, dp) < gpe_energy(tf.xi0, dp));
}

TEST_CASE("chemical potential grows with nbar and approaches B/2") {
    const DimensionlessParams base = fig1();
    double prev_mu = 0.0;
    double prev_gap = 1e9;
    for (double nbar : {1e3, 1e4, 1e5}) {
        CAPTURE(nbar);
        const DimensionlessParams dp = with_nbar(base, nbar, nbar);
        const GroundMode gm = solve_gpe(dp, default_grid(dp));
        CHECK(gm.mu > prev_mu);
        const double gap = std::abs(gm.mu / (dp.b_tf / 2.0) - 1.0);
        CHECK(gap < prev_gap);
        prev_mu = gm.mu;
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.01);
}

TEST_CASE("grid refinement changes mu by less than 1e-4 relative") {
    const DimensionlessParams dp = fig1();
    const double a = solve_gpe(dp, default_grid(dp, 2000)).mu;
    const double b = solve_gpe(dp, default_grid(dp, 4000)).mu;
    CHECK(testsupport::rel_err(a, b) < 1e-4);
}

TEST_CASE("solver errors") {
    const DimensionlessParams dp = fig1();
    const RadialGrid grid = default_grid(dp, 500);
    DimensionlessParams attractive = dp;
    attractive.g = -0.1;
    CHECK_THROWS_KIND(solve_gpe(attractive, grid), ErrorKind::UnsupportedRegime);
    CHECK_THROWS_KIND(thomas_fermi_mode(noninteracting(), grid), ErrorKind::UnsupportedRegime);
    GpeOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_KIND(solve_gpe(dp, grid, bad), ErrorKind::InvalidParameter);

    GpeOptions few;
    few.max_iter = 2;
    bool caught = false;
    try {
        solve_gpe(dp, grid, few);
    } catch (const ConvergenceError& e) {
        caught = true;
        CHECK(e.kind() == ErrorKind::Convergence);
        CHECK(e.iterations() == 2);
        CHECK(e.residual() > few.tol);
    }
    CHECK(caught);
}

}
