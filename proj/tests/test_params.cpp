#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bogodense/params.hpp"
#include "test_support.hpp"

using namespace bogodense;

TEST_SUITE("params") {

TEST_CASE("rubidium defaults give the expected trap units") {
    const PhysicalParams p = figure1_params();
    const DimensionlessParams dp = to_dimensionless(p);
    const double omega = 2.0 * std::numbers::pi * 1000.0;
    const double r0 = std::sqrt(1.054571817e-34 / (1.44e-25 * omega));
    CHECK(dp.r0_m == doctest::Approx(r0).epsilon(1e-12));
    CHECK(dp.r0_m == doctest::Approx(3.414e-7).epsilon(1e-3));
    CHECK(dp.omega_rad_s == doctest::Approx(omega));
    CHECK(dp.g == doctest::Approx(4.0 * std::numbers::pi * 10e-9 / r0).epsilon(1e-12));
    CHECK(dp.a_over_r0() == doctest::Approx(10e-9 / r0).epsilon(1e-12));
    // B = (15 N a/r0)^(2/5) ~ 72 for 1e5 atoms
    CHECK(dp.b_tf == doctest::Approx(std::pow(15.0 * 1e5 * 10e-9 / r0, 0.4)).epsilon(1e-12));
    CHECK(dp.b_tf == doctest::Approx(72.0).epsilon(5e-3));
    CHECK(dp.energy_unit_j() == doctest::Approx(1.054571817e-34 * omega));
}

TEST_CASE("B from the coupling matches B from the scattering length") {
    const DimensionlessParams dp = to_dimensionless(figure1_params());
    CHECK(thomas_fermi_b(dp.g, dp.nbar) == doctest::Approx(dp.b_tf).epsilon(1e-12));
    const DimensionlessParams c = from_coupling(dp.g, dp.nbar, dp.n0);
    CHECK(c.b_tf == doctest::Approx(dp.b_tf).epsilon(1e-12));
}

TEST_CASE("with_nbar rescales B as nbar^(2/5)") {
    const DimensionlessParams dp = to_dimensionless(figure1_params());
    const DimensionlessParams d2 = with_nbar(dp, 1e3, 1e3);
    CHECK(d2.g == dp.g);
    CHECK(d2.r0_m == dp.r0_m);
    CHECK(d2.nbar == 1e3);
    CHECK(d2.n0 == 1e3);
    CHECK(d2.b_tf == doctest::Approx(dp.b_tf * std::pow(1e-2, 0.4)).epsilon(1e-12));
}

TEST_CASE("zero scattering length switches interactions off") {
    PhysicalParams p = figure1_params();
    p.scattering_length_m = 0.0;
    const DimensionlessParams dp = to_dimensionless(p);
    CHECK(dp.g == 0.0);
    CHECK(dp.b_tf == 0.0);
}

TEST_CASE("invalid physical parameters are rejected") {
    auto bad = [](auto mutate) {
        PhysicalParams p = figure1_params();
        mutate(p);
        return p;
    };
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.mass_kg = 0.0; })), ErrorKind::InvalidParameter);
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.trap_frequency_hz = -1.0; })),
                      ErrorKind::InvalidParameter);
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.scattering_length_m = -1e-9; })),
                      ErrorKind::InvalidParameter);
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.nbar = 0.5; })), ErrorKind::InvalidParameter);
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.n0 = 0.0; })), ErrorKind::InvalidParameter);
    CHECK_THROWS_KIND(to_dimensionless(bad([](PhysicalParams& p) { p.mass_kg = NAN; })), ErrorKind::InvalidParameter);
}

}
