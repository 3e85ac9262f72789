#include "bogodense/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bogodense/error.hpp"
#include "lapack.hpp"

namespace bogodense::linalg {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), kd_(bandwidth), diags_(bandwidth + 1) {
    if (n == 0) throw Error(ErrorKind::InvalidParameter, "band matrix must be non-empty");
    for (std::size_t d = 0; d <= kd_; ++d) diags_[d].assign(n > d ? n - d : 0, 0.0);
}

double SymmetricBandMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    const std::size_t d = j - i;
    return d > kd_ ? 0.0 : diags_[d][i];
}

Eigen::MatrixXd SymmetricBandMatrix::dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t d = 0; d <= kd_; ++d)
        for (std::size_t i = 0; i < diags_[d].size(); ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(i + d);
            a(r, c) = diags_[d][i];
            a(c, r) = diags_[d][i];
        }
    return a;
}

std::vector<double> SymmetricBandMatrix::lapack_upper() const {
    const std::size_t ld = kd_ + 1;
    std::vector<double> ab(ld * n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t d = 0; d <= std::min(kd_, j); ++d) ab[(kd_ - d) + j * ld] = diags_[d][j - d];
    return ab;
}

void SymmetricBandMatrix::multiply(std::span<const std::complex<double>> x,
                                   std::span<std::complex<double>> y) const {
    for (std::size_t i = 0; i < n_; ++i) y[i] = diags_[0][i] * x[i];
    for (std::size_t d = 1; d <= kd_; ++d)
        for (std::size_t i = 0; i < diags_[d].size(); ++i) {
            y[i] += diags_[d][i] * x[i + d];
            y[i + d] += diags_[d][i] * x[i];
        }
}

EigenPairs eigh_banded(const SymmetricBandMatrix& a) {
    const auto n = static_cast<lapack_int>(a.size());
    const auto kd = static_cast<lapack_int>(a.bandwidth());
    std::vector<double> ab = a.lapack_upper();
    EigenPairs out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    const lapack_int info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'V', 'U', n, kd, ab.data(), kd + 1,
                                           out.values.data(), out.vectors.data(), n);
    if (info != 0) throw Error(ErrorKind::EigenSolver, "dsbevd failed, info = " + std::to_string(info));
    return out;
}

namespace {

// One eigenvector of a symmetric band matrix for an accurately known
// eigenvalue, by inverse iteration on the shifted band LU.
Eigen::VectorXd inverse_iteration(const SymmetricBandMatrix& a, double lambda,
                                  const Eigen::MatrixXd& previous, Eigen::Index n_previous) {
    const std::size_t n = a.size();
    const std::size_t kd = a.bandwidth();
    const std::size_t ld = 3 * kd + 1;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a.diag(0)[i]));
    double shift = lambda;
    std::vector<double> ab;
    std::vector<lapack_int> ipiv(n);

    for (int attempt = 0;; ++attempt) {
        ab.assign(ld * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t lo = j >= kd ? j - kd : 0;
            const std::size_t hi = std::min(n - 1, j + kd);
            for (std::size_t i = lo; i <= hi; ++i) {
                double v = a(i, j);
                if (i == j) v -= shift;
                ab[(2 * kd + i - j) + j * ld] = v;
            }
        }
        const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(n),
                                               static_cast<lapack_int>(n), static_cast<lapack_int>(kd),
                                               static_cast<lapack_int>(kd), ab.data(),
                                               static_cast<lapack_int>(ld), ipiv.data());
        if (info == 0) break;
        if (info < 0 || attempt > 4)
            throw Error(ErrorKind::EigenSolver, "inverse iteration factorization failed");
        shift -= 1e-13 * std::max(1.0, scale) * std::pow(10.0, attempt);
    }

    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = 1.0 + 0.01 * std::sin(1.7 * static_cast<double>(i));
    x.normalize();
    for (int it = 0; it < 4; ++it) {
        const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n),
                                               static_cast<lapack_int>(kd), static_cast<lapack_int>(kd), 1,
                                               ab.data(), static_cast<lapack_int>(ld), ipiv.data(), x.data(),
                                               static_cast<lapack_int>(n));
        if (info != 0) throw Error(ErrorKind::EigenSolver, "inverse iteration solve failed");
        // Keep clear of already accepted vectors (matters only for near-degenerate pairs).
        for (Eigen::Index k = 0; k < n_previous; ++k) x -= previous.col(k).dot(x) * previous.col(k);
        x.normalize();
    }
    return x;
}

}  // namespace

EigenPairs eigh_banded_lowest(const SymmetricBandMatrix& a, std::size_t count) {
    const auto n = static_cast<lapack_int>(a.size());
    const auto kd = static_cast<lapack_int>(a.bandwidth());
    if (count == 0 || count > a.size())
        throw Error(ErrorKind::InvalidParameter, "requested eigenpair count out of range");

    std::vector<double> ab = a.lapack_upper();
    std::vector<double> w(a.size());
    std::vector<lapack_int> ifail(a.size());
    lapack_int found = 0;
    double q_dummy = 0.0;
    double z_dummy = 0.0;
    const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, ab.data(), kd + 1,
                                           &q_dummy, 1, 0.0, 0.0, 1, static_cast<lapack_int>(count),
                                           2.0 * LAPACKE_dlamch('S'), &found, w.data(), &z_dummy, 1,
                                           ifail.data());
    if (info != 0 || found != static_cast<lapack_int>(count))
        throw Error(ErrorKind::EigenSolver, "dsbevx failed, info = " + std::to_string(info));

    const auto m = static_cast<Eigen::Index>(count);
    EigenPairs out{Eigen::VectorXd(m), Eigen::MatrixXd(n, m)};
    for (Eigen::Index k = 0; k < m; ++k) {
        out.values[k] = w[static_cast<std::size_t>(k)];
        Eigen::Index n_prev = 0;
        // Orthogonalize only against a preceding cluster.
        for (Eigen::Index j = k - 1; j >= 0; --j) {
            if (std::abs(out.values[j] - out.values[k]) > 1e-8 * std::max(1.0, std::abs(out.values[k]))) break;
            n_prev = k;
        }
        out.vectors.col(k) = inverse_iteration(a, out.values[k], out.vectors, n_prev);
    }
    return out;
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0);
    double denom = diag[0];
    if (denom == 0.0) throw Error(ErrorKind::InvalidParameter, "singular tridiagonal system");
    if (n > 1) c[0] = sup[0] / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - sub[i - 1] * c[i - 1];
        if (denom == 0.0) throw Error(ErrorKind::InvalidParameter, "singular tridiagonal system");
        if (i + 1 < n) c[i] = sup[i] / denom;
        rhs[i] = (rhs[i] - sub[i - 1] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

Bidiagonal cholesky_tridiagonal(std::span<const double> diag, std::span<const double> off) {
    const std::size_t n = diag.size();
    Bidiagonal l{std::vector<double>(n), std::vector<double>(n > 0 ? n - 1 : 0)};
    for (std::size_t i = 0; i < n; ++i) {
        const double s = i == 0 ? 0.0 : l.sub[i - 1];
        const double pivot = diag[i] - s * s;
        if (!(pivot > 0.0))
            throw Error(ErrorKind::EigenSolver, "tridiagonal matrix is not positive definite");
        l.diag[i] = std::sqrt(pivot);
        if (i + 1 < n) l.sub[i] = off[i] / l.diag[i];
    }
    return l;
}

}  // namespace bogodense::linalg
