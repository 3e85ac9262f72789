#include "bogodense/params.hpp"

#include <cmath>
#include <string>

#include "bogodense/error.hpp"

namespace bogodense {

PhysicalParams figure1_params() noexcept { return PhysicalParams{}; }

double thomas_fermi_b(double g, double nbar) noexcept {
    // 15 nbar a/r0 with a/r0 = g/(4 pi)
    return std::pow(15.0 * nbar * g / (4.0 * kPi), 0.4);
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidParameter, std::string("invalid parameter: ") + what);
}

}  // namespace

DimensionlessParams to_dimensionless(const PhysicalParams& p) {
    require(std::isfinite(p.mass_kg) && p.mass_kg > 0.0, "mass must be > 0");
    require(std::isfinite(p.trap_frequency_hz) && p.trap_frequency_hz > 0.0,
            "trap frequency must be > 0");
    require(std::isfinite(p.scattering_length_m) && p.scattering_length_m >= 0.0,
            "scattering length must be >= 0");
    require(std::isfinite(p.nbar) && p.nbar >= 1.0, "nbar must be >= 1");
    require(std::isfinite(p.n0) && p.n0 > 0.0, "n0 must be > 0");

    DimensionlessParams dp;
    dp.omega_rad_s = 2.0 * kPi * p.trap_frequency_hz;
    dp.r0_m = std::sqrt(kHbar / (p.mass_kg * dp.omega_rad_s));
    dp.g = 4.0 * kPi * p.scattering_length_m / dp.r0_m;
    dp.b_tf = thomas_fermi_b(dp.g, p.nbar);
    dp.nbar = p.nbar;
    dp.n0 = p.n0;
    return dp;
}

DimensionlessParams from_coupling(double g, double nbar, double n0) {
    require(std::isfinite(g) && g >= 0.0, "g must be >= 0");
    require(std::isfinite(nbar) && nbar >= 1.0, "nbar must be >= 1");
    require(std::isfinite(n0) && n0 > 0.0, "n0 must be > 0");
    DimensionlessParams dp;
    dp.g = g;
    dp.nbar = nbar;
    dp.n0 = n0;
    dp.b_tf = thomas_fermi_b(g, nbar);
    return dp;
}

DimensionlessParams with_nbar(const DimensionlessParams& dp, double nbar, double n0) {
    require(std::isfinite(nbar) && nbar >= 1.0, "nbar must be >= 1");
    require(std::isfinite(n0) && n0 > 0.0, "n0 must be > 0");
    DimensionlessParams out = dp;
    out.nbar = nbar;
    out.n0 = n0;
    out.b_tf = thomas_fermi_b(dp.g, nbar);
    return out;
}

}  // namespace bogodense
