#include "bogodense/gpe.hpp"

#include <cmath>
#include <string>

#include "bogodense/banded.hpp"
#include "bogodense/error.hpp"

namespace bogodense {

std::string_view to_string(GroundMethod m) noexcept {
    switch (m) {
        case GroundMethod::Numeric: return "numeric";
        case GroundMethod::ThomasFermi: return "thomas_fermi";
        case GroundMethod::Gaussian: return "gaussian";
    }
    return "unknown";
}

double thomas_fermi_radius(const DimensionlessParams& dp) noexcept {
    // mu_tf = B/2 and mu_tf = R^2/2
    return std::sqrt(dp.b_tf);
}

namespace {

void normalize(RadialField& f) {
    const double n = l2_norm(f);
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorKind::Convergence, "ground-mode iterate lost its norm");
    f *= 1.0 / n;
}

// (-1/2 lap + r^2/2 + g nbar xi^2) xi
RadialField apply_gp(const RadialField& xi, double g_nbar) {
    RadialField out = laplacian(xi);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double r = xi.grid.r(i);
        const double x = xi.values[i];
        out.values[i] = -0.5 * out.values[i] + (0.5 * r * r + g_nbar * x * x) * x;
    }
    return out;
}

}  // namespace

double gpe_energy(const RadialField& xi0, const DimensionlessParams& dp) {
    RadialField lin = laplacian(xi0);
    for (std::size_t i = 0; i < xi0.size(); ++i) {
        const double r = xi0.grid.r(i);
        lin.values[i] = -0.5 * lin.values[i] + 0.5 * r * r * xi0.values[i];
    }
    return inner(xi0, lin) + 0.5 * dp.g * dp.nbar * power_integral(xi0, 2);
}

double gpe_residual(const GroundMode& gm, const DimensionlessParams& dp) {
    RadialField res = apply_gp(gm.xi0, dp.g * dp.nbar);
    for (std::size_t i = 0; i < res.size(); ++i) res.values[i] -= gm.mu * gm.xi0.values[i];
    return l2_norm(res);
}

GroundMode gaussian_mode(const RadialGrid& grid) {
    const double c = std::pow(kPi, -0.75);
    GroundMode gm{RadialField::sample(grid, [c](double r) { return c * std::exp(-0.5 * r * r); })};
    gm.mu = 1.5;
    gm.nbar = 1.0;
    gm.method = GroundMethod::Gaussian;
    return gm;
}

GroundMode thomas_fermi_mode(const DimensionlessParams& dp, const RadialGrid& grid) {
    if (!(dp.g > 0.0))
        throw Error(ErrorKind::UnsupportedRegime, "Thomas-Fermi profile needs g > 0");
    const double mu = 0.5 * dp.b_tf;
    const double scale = 1.0 / (dp.nbar * dp.g);
    GroundMode gm{RadialField::sample(grid, [&](double r) {
        return std::sqrt(std::max(0.0, mu - 0.5 * r * r) * scale);
    })};
    gm.mu = mu;
    gm.nbar = dp.nbar;
    gm.method = GroundMethod::ThomasFermi;
    return gm;
}

GroundMode solve_gpe(const DimensionlessParams& dp, const RadialGrid& grid,
                     const GpeOptions& opts) {
    if (dp.g < 0.0)
        throw Error(ErrorKind::UnsupportedRegime, "attractive interactions (g < 0) unsupported");
    if (!(opts.tol > 0.0) || !(opts.dtau > 0.0) || opts.max_iter < 1)
        throw Error(ErrorKind::InvalidParameter, "solver needs tol > 0, dtau > 0, max_iter >= 1");

    RadialField xi = dp.b_tf > 10.0 ? thomas_fermi_mode(dp, grid).xi0 : gaussian_mode(grid).xi0;
    normalize(xi);

    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double g_nbar = dp.g * dp.nbar;
    const double off = -0.5 * opts.dtau / (h * h);
    std::vector<double> sub(n - 1, off), sup(n - 1, off), diag(n), w(n);

    GroundMode gm{xi};
    gm.nbar = dp.nbar;
    gm.method = GroundMethod::Numeric;

    for (int it = 0;; ++it) {
        const RadialField hx = apply_gp(xi, g_nbar);
        const double mu = inner(xi, hx);
        double res2 = 0.0;
        {
            RadialField res = hx;
            for (std::size_t i = 0; i < n; ++i) res.values[i] -= mu * xi.values[i];
            res2 = inner(res, res);
        }
        const double residual = std::sqrt(res2);
        if (opts.record_energy) gm.energy_trace.push_back(gpe_energy(xi, dp));

        if (residual <= opts.tol) {
            gm.xi0 = std::move(xi);
            gm.mu = mu;
            gm.residual = residual;
            gm.iterations = it;
            return gm;
        }
        if (it >= opts.max_iter || !std::isfinite(residual)) {
            throw ConvergenceError("ground-mode solver did not converge after " +
                                       std::to_string(it) + " iterations (residual " +
                                       std::to_string(residual) + ")",
                                   residual, it);
        }

        // (1 + dtau H[xi]) w_new = w, with w = r xi and the nonlinearity lagged.
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid.r(i);
            const double x = xi.values[i];
            diag[i] = 1.0 + opts.dtau * (1.0 / (h * h) + 0.5 * r * r + g_nbar * x * x);
            w[i] = r * x;
        }
        linalg::solve_tridiagonal(sub, diag, sup, w);
        for (std::size_t i = 0; i < n; ++i) xi.values[i] = w[i] / grid.r(i);
        normalize(xi);
    }
}

}  // namespace bogodense
