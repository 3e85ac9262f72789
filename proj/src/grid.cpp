#include "bogodense/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bogodense/error.hpp"

namespace bogodense {

namespace {

// Fixed summation blocks: partial sums are formed per block and added in
// block order, so the result does not depend on the OpenMP thread count.
constexpr std::size_t kBlock = 256;
constexpr std::size_t kParallelThreshold = 8192;

template <class Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

void require_same_grid(const RadialField& a, const RadialField& b) {
    if (!(a.grid == b.grid))
        throw Error(ErrorKind::InvalidParameter, "radial fields live on different grids");
}

}  // namespace

RadialGrid::RadialGrid(double r_max, std::size_t n_points) : r_max_(r_max), n_(n_points) {
    if (!(std::isfinite(r_max) && r_max > 0.0))
        throw Error(ErrorKind::InvalidParameter, "grid r_max must be > 0");
    if (n_points < kMinPoints)
        throw Error(ErrorKind::InvalidParameter,
                    "grid needs at least " + std::to_string(kMinPoints) + " points");
}

std::vector<double> RadialGrid::nodes() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = r(i);
    return out;
}

RadialGrid default_grid(const DimensionlessParams& dp, std::size_t n_points) {
    double r_max = 8.0;
    if (dp.g > 0.0) r_max = std::max(r_max, 2.0 * std::sqrt(dp.b_tf));
    return RadialGrid(r_max, n_points);
}

RadialField::RadialField(const RadialGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw Error(ErrorKind::InvalidParameter, "field length does not match grid");
}

bool RadialField::is_finite() const noexcept {
    return std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); });
}

RadialField& RadialField::operator+=(const RadialField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

RadialField& RadialField::operator-=(const RadialField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

RadialField& RadialField::operator*=(double s) noexcept {
    for (double& x : values) x *= s;
    return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(RadialField a, double s) { return a *= s; }
RadialField operator*(double s, RadialField a) { return a *= s; }

RadialField hadamard(const RadialField& a, const RadialField& b) {
    require_same_grid(a, b);
    RadialField out(a.grid);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

double integrate(const RadialField& f) {
    const double h = f.grid.spacing();
    const double* v = f.values.data();
    const double s = blocked_sum(f.size(), [&](std::size_t i) {
        const double r = h * static_cast<double>(i + 1);
        return r * r * v[i];
    });
    return 4.0 * kPi * h * s;
}

double inner(const RadialField& f, const RadialField& g) {
    require_same_grid(f, g);
    const double h = f.grid.spacing();
    const double* a = f.values.data();
    const double* b = g.values.data();
    const double s = blocked_sum(f.size(), [&](std::size_t i) {
        const double r = h * static_cast<double>(i + 1);
        return r * r * a[i] * b[i];
    });
    return 4.0 * kPi * h * s;
}

double power_integral(const RadialField& f, int power) {
    const double h = f.grid.spacing();
    const double* v = f.values.data();
    const double s = blocked_sum(f.size(), [&](std::size_t i) {
        const double r = h * static_cast<double>(i + 1);
        const double x2 = v[i] * v[i];
        double p = 1.0;
        for (int k = 0; k < power; ++k) p *= x2;
        return r * r * p;
    });
    return 4.0 * kPi * h * s;
}

RadialField laplacian(const RadialField& f) {
    const std::size_t n = f.size();
    const double h = f.grid.spacing();
    RadialField out(f.grid);
    const double* v = f.values.data();
    double* o = out.values.data();
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const double r = h * static_cast<double>(i + 1);
        const double wm = i == 0 ? 0.0 : h * static_cast<double>(i) * v[i - 1];
        const double wp = i + 1 == n ? 0.0 : h * static_cast<double>(i + 2) * v[i + 1];
        o[i] = (wp - 2.0 * r * v[i] + wm) / (h * h) / r;
    }
    return out;
}

double l2_norm(const RadialField& f) { return std::sqrt(inner(f, f)); }

namespace serial {

double integrate(const RadialField& f) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f.grid.r(i);
        s += r * r * f.values[i];
    }
    return 4.0 * kPi * h * s;
}

double inner(const RadialField& f, const RadialField& g) {
    require_same_grid(f, g);
    const double h = f.grid.spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f.grid.r(i);
        s += r * r * f.values[i] * g.values[i];
    }
    return 4.0 * kPi * h * s;
}

RadialField laplacian(const RadialField& f) {
    const std::size_t n = f.size();
    const double h = f.grid.spacing();
    RadialField out(f.grid);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = f.grid.r(i);
        const double wm = i == 0 ? 0.0 : f.grid.r(i - 1) * f.values[i - 1];
        const double wp = i + 1 == n ? 0.0 : f.grid.r(i + 1) * f.values[i + 1];
        out.values[i] = (wp - 2.0 * r * f.values[i] + wm) / (h * h) / r;
    }
    return out;
}

}  // namespace serial

}  // namespace bogodense
