#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bogodense/params.hpp"

namespace bogodense {

/// Uniform radial grid r_i = i*h, i = 1..n, h = r_max/n.
///
/// The origin is not a node. Spherically symmetric fields are handled through
/// w(r) = r f(r), for which r = 0 and r = r_max + h act as Dirichlet ghost points.
class RadialGrid {
public:
    static constexpr std::size_t kMinPoints = 16;
    static constexpr std::size_t kDefaultPoints = 4000;

    RadialGrid(double r_max, std::size_t n_points);

    double r_max() const noexcept { return r_max_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return r_max_ / static_cast<double>(n_); }
    double r(std::size_t i) const noexcept { return spacing() * static_cast<double>(i + 1); }
    std::vector<double> nodes() const;

    bool operator==(const RadialGrid&) const = default;

private:
    double r_max_;
    std::size_t n_;
};

/// r_max = max(2 * Thomas-Fermi radius, 8) for g > 0, else 8.
RadialGrid default_grid(const DimensionlessParams& dp,
                        std::size_t n_points = RadialGrid::kDefaultPoints);

/// Real samples of a spherically symmetric function on a RadialGrid.
struct RadialField {
    RadialGrid grid;
    std::vector<double> values;

    explicit RadialField(const RadialGrid& g) : grid(g), values(g.size(), 0.0) {}
    RadialField(const RadialGrid& g, std::vector<double> v);

    template <class F>
    static RadialField sample(const RadialGrid& g, F&& f) {
        RadialField out(g);
        for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = f(g.r(i));
        return out;
    }

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const noexcept { return values[i]; }
    double& operator[](std::size_t i) noexcept { return values[i]; }
    bool is_finite() const noexcept;

    RadialField& operator+=(const RadialField& o);
    RadialField& operator-=(const RadialField& o);
    RadialField& operator*=(double s) noexcept;
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(RadialField a, double s);
RadialField operator*(double s, RadialField a);
/// Pointwise product.
RadialField hadamard(const RadialField& a, const RadialField& b);

/// 4 pi sum_i r_i^2 f_i h. Second order for fields vanishing at r_max.
double integrate(const RadialField& f);
/// integrate(f*g) without forming the product.
double inner(const RadialField& f, const RadialField& g);
/// integrate(f^(2n)); used for the alpha_n moments.
double power_integral(const RadialField& f, int power);

/// Spherical Laplacian (1/r) d^2(r f)/dr^2, central differences on w = r f
/// with w(0) = 0 and w(r_max + h) = 0.
RadialField laplacian(const RadialField& f);

/// Discrete L2 norm sqrt(integrate(f^2)).
double l2_norm(const RadialField& f);

/// Plain single-threaded versions kept as references for the parallel kernels.
namespace serial {
double integrate(const RadialField& f);
double inner(const RadialField& f, const RadialField& g);
RadialField laplacian(const RadialField& f);
}  // namespace serial

}  // namespace bogodense
