#include "bogodense/modes.hpp"

#include <cmath>
#include <string>

#include "bogodense/error.hpp"

namespace bogodense {

double moment(const GroundMode& gm, int n) {
    if (n < 1 || n > 4)
        throw Error(ErrorKind::InvalidParameter, "moment order must be in 1..4");
    return power_integral(gm.xi0, n);
}

ModeOne build_xi1(const GroundMode& gm) {
    const double a2 = moment(gm, 2);
    const double a3 = moment(gm, 3);
    const double spread = a3 - a2 * a2;
    if (!(spread > 1e-10 * a3))
        throw Error(ErrorKind::DegenerateMode,
                    "alpha3 <= alpha2^2: ground mode has no density variation to couple to");
    ModeOne m1{RadialField(gm.xi0.grid), 1.0 / std::sqrt(spread)};
    for (std::size_t i = 0; i < gm.xi0.size(); ++i) {
        const double x = gm.xi0.values[i];
        m1.xi1.values[i] = m1.beta * (x * x - a2) * x;
    }
    return m1;
}

CouplingCoefficients coefficients(const GroundMode& gm, const ModeOne& m1,
                                  const DimensionlessParams& dp) {
    const RadialField& xi = gm.xi0;
    if (!(xi.grid == m1.xi1.grid))
        throw Error(ErrorKind::InvalidParameter, "xi0 and xi1 on different grids");

    CouplingCoefficients c;
    c.alpha2 = moment(gm, 2);
    c.alpha3 = moment(gm, 3);
    c.alpha4 = moment(gm, 4);
    c.beta = m1.beta;
    c.g = dp.g;
    c.nbar = dp.nbar;
    c.mu = gm.mu;
    c.gamma = (c.beta * c.beta * (c.alpha4 - c.alpha2 * c.alpha2 * c.alpha2) - 2.0 * c.alpha2) * dp.g;
    c.g01 = dp.g / c.beta;

    // xi0^2 lap(xi0) - lap(xi0^3)
    RadialField cube(xi.grid);
    for (std::size_t i = 0; i < xi.size(); ++i) cube.values[i] = xi.values[i] * xi.values[i] * xi.values[i];
    const RadialField lap_xi = laplacian(xi);
    RadialField kin = laplacian(cube);
    for (std::size_t i = 0; i < xi.size(); ++i)
        kin.values[i] = xi.values[i] * xi.values[i] * lap_xi.values[i] - kin.values[i];
    c.mu1 = gm.mu + 0.5 * c.beta * inner(m1.xi1, kin);
    return c;
}

CouplingCoefficients thomas_fermi_coefficients(const DimensionlessParams& dp) {
    if (!(dp.g > 0.0))
        throw Error(ErrorKind::UnsupportedRegime, "Thomas-Fermi coefficients need g > 0");
    const double b = dp.b_tf;
    // alpha_n = (15/2)^n K^(n-1) int_0^1 (1-x^2)^n x^2 dx with K = B/(15 nbar g)
    const double k = b / (15.0 * dp.nbar * dp.g);
    CouplingCoefficients c;
    c.alpha2 = 30.0 / 7.0 * k;
    c.alpha3 = 150.0 / 7.0 * k * k;
    c.alpha4 = 9000.0 / 77.0 * k * k * k;
    c.beta = 1.0 / std::sqrt(c.alpha3 - c.alpha2 * c.alpha2);
    c.g = dp.g;
    c.nbar = dp.nbar;
    c.gamma = (c.beta * c.beta * (c.alpha4 - c.alpha2 * c.alpha2 * c.alpha2) - 2.0 * c.alpha2) * dp.g;
    c.g01 = dp.g / c.beta;
    c.mu = 0.5 * b;
    c.mu1 = c.mu + 63.0 / (4.0 * b);
    return c;
}

ModeSet solve_modes(const DimensionlessParams& dp, const RadialGrid& grid, const GpeOptions& opts) {
    GroundMode ground = solve_gpe(dp, grid, opts);
    ModeOne mode1 = build_xi1(ground);
    const CouplingCoefficients coeffs = coefficients(ground, mode1, dp);
    return ModeSet{std::move(ground), std::move(mode1), coeffs};
}

}  // namespace bogodense
