#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "bogodense/banded.hpp"
#include "test_support.hpp"

using namespace bogodense;
using namespace bogodense::linalg;

namespace {

SymmetricBandMatrix random_band(std::size_t n, std::size_t kd, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymmetricBandMatrix a(n, kd);
    for (std::size_t d = 0; d <= kd; ++d)
        for (double& x : a.diag(d)) x = u(rng) + (d == 0 ? 4.0 : 0.0);
    return a;
}

}  // namespace

TEST_SUITE("banded") {

TEST_CASE("band storage round-trips through the dense form") {
    const SymmetricBandMatrix a = random_band(9, 2, 1);
    const Eigen::MatrixXd d = a.dense();
    CHECK(d == d.transpose());
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) {
            const double expect = (i > j ? i - j : j - i) <= 2 ? d(i, j) : 0.0;
            CHECK(a(i, j) == expect);
            CHECK(d(i, j) == expect);
        }
    CHECK_THROWS_KIND(SymmetricBandMatrix(0, 1), ErrorKind::InvalidParameter);
}

TEST_CASE("band multiply matches the dense product") {
    const SymmetricBandMatrix a = random_band(12, 2, 2);
    std::vector<std::complex<double>> x(12), y(12);
    for (std::size_t i = 0; i < 12; ++i) x[i] = {std::cos(double(i)), std::sin(0.3 * double(i))};
    a.multiply(x, y);
    const Eigen::VectorXcd ref = a.dense().cast<std::complex<double>>() * Eigen::Map<Eigen::VectorXcd>(x.data(), 12);
    for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(y[i] - ref(static_cast<Eigen::Index>(i))) < 1e-13);
}

TEST_CASE("full band eigendecomposition agrees with a dense solver") {
    const SymmetricBandMatrix a = random_band(60, 2, 3);
    const EigenPairs ep = eigh_banded(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a.dense());
    CHECK((ep.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd d = a.dense();
    CHECK((d * ep.vectors - ep.vectors * ep.values.asDiagonal()).norm() < 1e-11);
    CHECK((ep.vectors.transpose() * ep.vectors - Eigen::MatrixXd::Identity(60, 60)).norm() < 1e-12);
}

TEST_CASE("lowest eigenpairs by bisection and inverse iteration") {
    const SymmetricBandMatrix a = random_band(200, 2, 4);
    const EigenPairs all = eigh_banded(a);
    const EigenPairs low = eigh_banded_lowest(a, 6);
    REQUIRE(low.values.size() == 6);
    const Eigen::MatrixXd d = a.dense();
    for (Eigen::Index k = 0; k < 6; ++k) {
        CAPTURE(k);
        CHECK(low.values(k) == doctest::Approx(all.values(k)).epsilon(1e-12));
        const Eigen::VectorXd v = low.vectors.col(k);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((d * v - low.values(k) * v).norm() < 1e-9);
        CHECK(std::abs(v.dot(all.vectors.col(k))) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_KIND(eigh_banded_lowest(a, 201), ErrorKind::InvalidParameter);
}

TEST_CASE("lowest pairs of a matrix with a degenerate level stay orthonormal") {
    SymmetricBandMatrix a(40, 1);
    for (std::size_t i = 0; i < 40; ++i) a.diag(0)[i] = 2.0 + double(i);
    a.diag(0)[1] = 2.0;  // doubly degenerate ground level, no coupling
    const EigenPairs low = eigh_banded_lowest(a, 3);
    CHECK(low.values(0) == doctest::Approx(2.0));
    CHECK(low.values(1) == doctest::Approx(2.0));
    CHECK((low.vectors.transpose() * low.vectors - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("tridiagonal solve matches a dense solve") {
    const std::size_t n = 50;
    std::vector<double> sub(n - 1), diag(n), sup(n - 1), rhs(n);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = 4.0 + std::sin(double(i));
        rhs[i] = std::cos(double(i));
        d(i, i) = diag[i];
        if (i + 1 < n) {
            sub[i] = -1.0 + 0.1 * double(i % 3);
            sup[i] = -0.5;
            d(i + 1, i) = sub[i];
            d(i, i + 1) = sup[i];
        }
    }
    const Eigen::VectorXd ref = d.partialPivLu().solve(Eigen::Map<Eigen::VectorXd>(rhs.data(), n));
    solve_tridiagonal(sub, diag, sup, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(rhs[i] == doctest::Approx(ref(Eigen::Index(i))).epsilon(1e-12));
}

TEST_CASE("bidiagonal Cholesky factor") {
    const std::vector<double> diag{4.0, 5.0, 6.0, 7.0};
    const std::vector<double> off{1.0, -2.0, 0.5};
    const Bidiagonal l = cholesky_tridiagonal(diag, off);
    Eigen::MatrixXd lm = Eigen::MatrixXd::Zero(4, 4);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        lm(i, i) = l.diag[i];
        a(i, i) = diag[i];
        if (i < 3) {
            lm(i + 1, i) = l.sub[i];
            a(i + 1, i) = a(i, i + 1) = off[i];
        }
    }
    CHECK((lm * lm.transpose() - a).norm() < 1e-13);
    const std::vector<double> indefinite{1.0, -1.0};
    const std::vector<double> o1{0.0};
    CHECK_THROWS_KIND(cholesky_tridiagonal(indefinite, o1), ErrorKind::EigenSolver);
}

}
