#include "bogodense/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bogodense/banded.hpp"
#include "bogodense/error.hpp"

namespace bogodense {

double Mode1Decomposition::weight_from(std::size_t first) const {
    double acc = 0.0;
    for (std::size_t k = first == 0 ? 0 : first - 1; k < p.size(); ++k) acc += p[k] * p[k] - q[k] * q[k];
    return acc;
}

RadialField project_orthogonal(const RadialField& f, const GroundMode& gm) {
    const double overlap = inner(gm.xi0, f);
    RadialField out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= overlap * gm.xi0.values[i];
    return out;
}

namespace {

// Tridiagonal operators in w = r f, where they are symmetric:
//   A = Lt - Q = H_gp - mu,  B = Lt + Q = H_gp - mu + 2Q.
struct BdgOperators {
    std::vector<double> a_diag;
    std::vector<double> b_diag;
    std::vector<double> off;
};

BdgOperators build_operators(const GroundMode& gm, const DimensionlessParams& dp) {
    const RadialGrid& grid = gm.xi0.grid;
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double g_nbar = dp.g * dp.nbar;
    BdgOperators ops{std::vector<double>(n), std::vector<double>(n),
                     std::vector<double>(n - 1, -0.5 / (h * h))};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.r(i);
        const double q = g_nbar * gm.xi0.values[i] * gm.xi0.values[i];
        ops.a_diag[i] = 1.0 / (h * h) + 0.5 * r * r + q - gm.mu;
        ops.b_diag[i] = ops.a_diag[i] + 2.0 * q;
    }
    return ops;
}

// Raw (u, v) in w variables for one eigenpair, before normalization.
struct RawMode {
    double omega;
    std::vector<double> uw;
    std::vector<double> vw;
};

// Fixes the overall sign (u positive at the innermost node where it is
// appreciably nonzero), projects, and normalizes integrate(U^2 - V^2) = 1.
QuasiparticleMode finish_mode(RawMode raw, const GroundMode& gm) {
    const RadialGrid& grid = gm.xi0.grid;
    QuasiparticleMode m{raw.omega, RadialField(grid), RadialField(grid), RadialField(grid), RadialField(grid)};
    double peak = 0.0;
    for (double x : raw.uw) peak = std::max(peak, std::abs(x));
    double sign = 1.0;
    for (std::size_t i = 0; i < raw.uw.size(); ++i) {
        if (std::abs(raw.uw[i]) > 1e-6 * peak) {
            sign = raw.uw[i] > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        m.u.values[i] = sign * raw.uw[i] / r;
        m.v.values[i] = sign * raw.vw[i] / r;
    }
    m.U = project_orthogonal(m.u, gm);
    m.V = project_orthogonal(m.v, gm);
    const double norm = inner(m.U, m.U) - inner(m.V, m.V);
    if (!(norm > 0.0))
        throw Error(ErrorKind::EigenSolver, "quasiparticle with non-positive norm in positive-frequency branch");
    const double s = 1.0 / std::sqrt(norm);
    m.u *= s;
    m.v *= s;
    m.U *= s;
    m.V *= s;
    return m;
}

// Q = 0: the pair decouples, v = 0 and omega_k are the gaps of H - mu.
std::vector<RawMode> single_particle_modes(const BdgOperators& ops, std::size_t wanted) {
    const std::size_t n = ops.a_diag.size();
    std::vector<RawMode> out;
    for (std::size_t count = std::min(n, wanted + 2);; count = std::min(n, count + 8)) {
        linalg::SymmetricBandMatrix a(n, 1);
        std::copy(ops.a_diag.begin(), ops.a_diag.end(), a.diag(0).begin());
        std::copy(ops.off.begin(), ops.off.end(), a.diag(1).begin());
        const linalg::EigenPairs eig = linalg::eigh_banded_lowest(a, count);
        out.clear();
        for (Eigen::Index k = 0; k < eig.values.size() && out.size() < wanted; ++k) {
            if (eig.values[k] < kZeroModeThreshold) continue;
            RawMode m{eig.values[k], std::vector<double>(n), std::vector<double>(n, 0.0)};
            for (std::size_t i = 0; i < n; ++i) m.uw[i] = eig.vectors(static_cast<Eigen::Index>(i), k);
            out.push_back(std::move(m));
        }
        if (out.size() >= wanted || count == n) return out;
    }
}

std::vector<RawMode> coupled_modes(const BdgOperators& ops, const GroundMode& gm, std::size_t wanted) {
    const std::size_t n = ops.a_diag.size();
    const linalg::Bidiagonal l = linalg::cholesky_tridiagonal(ops.b_diag, ops.off);

    auto l_at = [&](std::size_t row, std::size_t col) -> double {
        if (row == col) return l.diag[col];
        if (row == col + 1) return l.sub[col];
        return 0.0;
    };
    auto a_at = [&](std::size_t row, std::size_t col) -> double {
        if (row == col) return ops.a_diag[row];
        if (row + 1 == col || col + 1 == row) return ops.off[std::min(row, col)];
        return 0.0;
    };

    // S = L^T A L, pentadiagonal symmetric
    linalg::SymmetricBandMatrix s(n, 2);
    for (std::size_t d = 0; d <= 2; ++d) {
        for (std::size_t i = 0; i + d < n; ++i) {
            const std::size_t j = i + d;
            double acc = 0.0;
            for (std::size_t k = i; k <= std::min(i + 1, n - 1); ++k)
                for (std::size_t m = j; m <= std::min(j + 1, n - 1); ++m) acc += l_at(k, i) * a_at(k, m) * l_at(m, j);
            s.diag(d)[i] = acc;
        }
    }

    // Zero-mode direction: A L y0 = 0  <=>  L y0 = w0 = r xi0.
    Eigen::VectorXd y0(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double w0 = gm.xi0.grid.r(i) * gm.xi0.values[i];
        const double prev = i == 0 ? 0.0 : l.sub[i - 1] * y0[static_cast<Eigen::Index>(i - 1)];
        y0[static_cast<Eigen::Index>(i)] = (w0 - prev) / l.diag[i];
    }
    y0.normalize();

    std::vector<RawMode> out;
    for (std::size_t count = std::min(n, wanted + 3);; count = std::min(n, count + 8)) {
        const linalg::EigenPairs eig = linalg::eigh_banded_lowest(s, count);
        out.clear();
        for (Eigen::Index k = 0; k < eig.values.size() && out.size() < wanted; ++k) {
            const double w2 = eig.values[k];
            const Eigen::VectorXd y = eig.vectors.col(k);
            if (w2 < kZeroModeThreshold * kZeroModeThreshold || std::abs(y.dot(y0)) > 0.5) continue;
            const double omega = std::sqrt(w2);

            // D = L^{-T} y
            std::vector<double> dvec(n);
            for (std::size_t i = n; i-- > 0;) {
                const double next = i + 1 < n ? l.sub[i] * dvec[i + 1] : 0.0;
                dvec[i] = (y[static_cast<Eigen::Index>(i)] - next) / l.diag[i];
            }
            RawMode m{omega, std::vector<double>(n), std::vector<double>(n)};
            for (std::size_t i = 0; i < n; ++i) {
                double bd = ops.b_diag[i] * dvec[i];
                if (i > 0) bd += ops.off[i - 1] * dvec[i - 1];
                if (i + 1 < n) bd += ops.off[i] * dvec[i + 1];
                const double sum = bd / omega;  // u + v
                m.uw[i] = 0.5 * (sum + dvec[i]);
                m.vw[i] = 0.5 * (sum - dvec[i]);
            }
            out.push_back(std::move(m));
        }
        if (out.size() >= wanted || count == n) return out;
    }
}

}  // namespace

QuasiparticleSpectrum solve_bdg(const GroundMode& gm, const DimensionlessParams& dp, std::size_t num_modes) {
    if (num_modes == 0) throw Error(ErrorKind::InvalidParameter, "num_modes must be >= 1");
    if (dp.g < 0.0) throw Error(ErrorKind::UnsupportedRegime, "attractive interactions (g < 0) unsupported");
    const BdgOperators ops = build_operators(gm, dp);
    std::vector<RawMode> raw = dp.g * dp.nbar > 0.0 ? coupled_modes(ops, gm, num_modes)
                                                    : single_particle_modes(ops, num_modes);
    if (raw.size() < num_modes)
        throw Error(ErrorKind::InsufficientModes, "found " + std::to_string(raw.size()) + " positive-norm modes, wanted " +
                                                      std::to_string(num_modes));

    QuasiparticleSpectrum spec;
    spec.nbar = dp.nbar;
    for (RawMode& r : raw) spec.modes.push_back(finish_mode(std::move(r), gm));
    for (const QuasiparticleMode& m : spec.modes) spec.c_const -= m.omega * inner(m.V, m.V);
    return spec;
}

Mode1Decomposition decompose_mode1(const ModeOne& m1, const QuasiparticleSpectrum& spec) {
    if (spec.modes.size() < 2) throw Error(ErrorKind::InsufficientModes, "decomposition needs at least two modes");
    Mode1Decomposition d;
    double sum = 0.0;
    for (const QuasiparticleMode& m : spec.modes) {
        d.p.push_back(inner(m1.xi1, m.U));
        d.q.push_back(inner(m1.xi1, m.V));
        sum += d.p.back() * d.p.back() - d.q.back() * d.q.back();
    }
    d.residual = 1.0 - sum;
    return d;
}

double c_const_double_sum(const QuasiparticleSpectrum& spec) {
    double c = 0.0;
    for (const QuasiparticleMode& mk : spec.modes)
        for (const QuasiparticleMode& mj : spec.modes) c -= mk.omega * inner(mj.V, mk.v);
    return c;
}

}  // namespace bogodense
