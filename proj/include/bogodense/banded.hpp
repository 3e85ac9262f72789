#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bogodense::linalg {

/// Real symmetric band matrix stored by upper diagonals: diag(d)[i] = A(i, i+d).
class SymmetricBandMatrix {
public:
    SymmetricBandMatrix(std::size_t n, std::size_t bandwidth);

    std::size_t size() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return kd_; }

    std::span<double> diag(std::size_t d) { return diags_[d]; }
    std::span<const double> diag(std::size_t d) const { return diags_[d]; }

    /// A(i, j), zero outside the band.
    double operator()(std::size_t i, std::size_t j) const noexcept;

    Eigen::MatrixXd dense() const;
    /// LAPACK upper band storage ('U', ldab = kd+1), column major.
    std::vector<double> lapack_upper() const;

    void multiply(std::span<const std::complex<double>> x,
                  std::span<std::complex<double>> y) const;

private:
    std::size_t n_;
    std::size_t kd_;
    std::vector<std::vector<double>> diags_;
};

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, unit norm
};

/// Full decomposition (LAPACK dsbevd).
EigenPairs eigh_banded(const SymmetricBandMatrix& a);

/// The `count` lowest pairs (LAPACK dsbevx, index range).
EigenPairs eigh_banded_lowest(const SymmetricBandMatrix& a, std::size_t count);

/// Solves a general tridiagonal system in place (Thomas algorithm, no pivoting;
/// intended for diagonally dominant matrices). `sub[i]` = A(i+1, i), `sup[i]` = A(i, i+1).
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs);

/// Lower bidiagonal Cholesky factor L of a symmetric positive-definite
/// tridiagonal matrix: A = L L^T. Returns {diag of L, subdiag of L}; throws
/// Error(EigenSolver) when a pivot is not positive.
struct Bidiagonal {
    std::vector<double> diag;
    std::vector<double> sub;
};
Bidiagonal cholesky_tridiagonal(std::span<const double> diag, std::span<const double> off);

}  // namespace bogodense::linalg
