#include "bogodense/twomode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bogodense/error.hpp"
#include "lapack.hpp"

namespace bogodense {

using cplx = std::complex<double>;

TwoModeHamiltonian build_h01(const CouplingCoefficients& c, std::size_t m_total) {
    if (m_total < 1) throw Error(ErrorKind::InvalidParameter, "two-mode sector needs M >= 1");
    TwoModeHamiltonian h;
    h.m_total = m_total;
    h.coeffs = c;
    const double m = static_cast<double>(m_total);
    const double nbar = c.nbar;
    const double ga2 = c.g_alpha2();

    h.diag.resize(m_total + 1);
    for (std::size_t k = 0; k <= m_total; ++k) {
        const double n1 = static_cast<double>(k);
        const double n0 = m - n1;
        h.diag[k] = c.mu * n0 + 0.5 * ga2 * (n0 * (n0 - 1.0) - 2.0 * nbar * n0) + c.mu1 * n1 +
                    c.gamma * n1 * (2.0 * n0 - nbar);
    }
    // (g/beta)(a0^dag a0 - nbar) a1^dag a0 + h.c.
    h.off1.resize(m_total);
    for (std::size_t k = 0; k < m_total; ++k) {
        const double n1 = static_cast<double>(k);
        h.off1[k] = c.g01 * (m - n1 - 1.0 - nbar) * std::sqrt((n1 + 1.0) * (m - n1));
    }
    // (gamma/2)(a1^dag a1^dag a0 a0 + h.c.)
    if (m_total >= 2) {
        h.off2.resize(m_total - 1);
        for (std::size_t k = 0; k + 1 < m_total; ++k) {
            const double n1 = static_cast<double>(k);
            h.off2[k] = 0.5 * c.gamma * std::sqrt((n1 + 1.0) * (n1 + 2.0) * (m - n1) * (m - n1 - 1.0));
        }
    }
    return h;
}

linalg::SymmetricBandMatrix TwoModeHamiltonian::band() const {
    linalg::SymmetricBandMatrix a(dim(), dim() > 2 ? 2 : dim() - 1);
    std::copy(diag.begin(), diag.end(), a.diag(0).begin());
    if (a.bandwidth() >= 1) std::copy(off1.begin(), off1.end(), a.diag(1).begin());
    if (a.bandwidth() >= 2) std::copy(off2.begin(), off2.end(), a.diag(2).begin());
    return a;
}

Eigen::MatrixXd TwoModeHamiltonian::dense() const { return band().dense(); }

TwoModeState TwoModeState::fock(std::size_t m_total, std::size_t n1) {
    if (n1 > m_total) throw Error(ErrorKind::InvalidParameter, "n1 exceeds M");
    TwoModeState s{m_total, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m_total + 1))};
    s.amplitudes[static_cast<Eigen::Index>(n1)] = 1.0;
    return s;
}

std::vector<double> TwoModeState::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(amplitudes.size()));
    for (Eigen::Index k = 0; k < amplitudes.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(amplitudes[k]);
    return p;
}

double mean_n1(const TwoModeState& s) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s.amplitudes.size(); ++k) acc += static_cast<double>(k) * std::norm(s.amplitudes[k]);
    return acc;
}

double mean_n0(const TwoModeState& s) {
    double acc = 0.0;
    const double m = static_cast<double>(s.m_total);
    for (Eigen::Index k = 0; k < s.amplitudes.size(); ++k)
        acc += (m - static_cast<double>(k)) * std::norm(s.amplitudes[k]);
    return acc;
}

// ---------------------------------------------------------------------------

SpectralPropagator::SpectralPropagator(const TwoModeHamiltonian& h)
    : m_total_(h.m_total), eig_(linalg::eigh_banded(h.band())) {}

Eigen::VectorXcd SpectralPropagator::project(const TwoModeState& s0) const {
    if (s0.m_total != m_total_) throw Error(ErrorKind::InvalidParameter, "state and Hamiltonian sectors differ");
    const Eigen::VectorXd re = eig_.vectors.transpose() * s0.amplitudes.real();
    const Eigen::VectorXd im = eig_.vectors.transpose() * s0.amplitudes.imag();
    Eigen::VectorXcd c(re.size());
    c.real() = re;
    c.imag() = im;
    return c;
}

Eigen::VectorXcd SpectralPropagator::evolve_projected(const Eigen::VectorXcd& c, double t) const {
    // Phases relative to the lowest level; the dropped global phase is restored in evolve().
    const double e0 = eig_.values[0];
    Eigen::VectorXd re(c.size());
    Eigen::VectorXd im(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        const cplx p = std::polar(1.0, -(eig_.values[k] - e0) * t) * c[k];
        re[k] = p.real();
        im[k] = p.imag();
    }
    // the eigenvectors are real: apply them to both parts without a complex copy
    Eigen::VectorXcd psi(c.size());
    psi.real() = eig_.vectors * re;
    psi.imag() = eig_.vectors * im;
    return psi;
}

TwoModeState SpectralPropagator::evolve(const TwoModeState& s0, double t) const {
    TwoModeState out{m_total_, evolve_projected(project(s0), t)};
    out.amplitudes *= std::polar(1.0, -eig_.values[0] * t);
    return out;
}

std::vector<double> SpectralPropagator::probabilities(const TwoModeState& s0, double t) const {
    const Eigen::VectorXcd psi = evolve_projected(project(s0), t);
    std::vector<double> p(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index k = 0; k < psi.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(psi[k]);
    return p;
}

double SpectralPropagator::mean_n1_at(const TwoModeState& s0, double t) const {
    const Eigen::VectorXcd psi = evolve_projected(project(s0), t);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k) acc += static_cast<double>(k) * std::norm(psi[k]);
    return acc;
}

std::vector<double> mean_n1_trace(const SpectralPropagator& prop, const TwoModeState& s0,
                                  std::span<const double> times) {
    std::vector<double> out(times.size());
    const auto nt = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < nt; ++i)
        out[static_cast<std::size_t>(i)] = prop.mean_n1_at(s0, times[static_cast<std::size_t>(i)]);
    return out;
}

namespace serial {
std::vector<double> mean_n1_trace(const SpectralPropagator& prop, const TwoModeState& s0,
                                  std::span<const double> times) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(prop.mean_n1_at(s0, t));
    return out;
}
}  // namespace serial

double first_return_time(const SpectralPropagator& prop, const TwoModeState& s0, double t_guess) {
    if (!(t_guess > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_guess must be > 0");
    constexpr int kSamples = 240;
    const double lo = 0.5 * t_guess;
    const double hi = 1.5 * t_guess;
    const double dt = (hi - lo) / kSamples;
    int best = 0;
    double best_val = prop.mean_n1_at(s0, lo);
    for (int i = 1; i <= kSamples; ++i) {
        const double v = prop.mean_n1_at(s0, lo + i * dt);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    // golden-section on the bracketing cells
    double a = lo + std::max(0, best - 1) * dt;
    double b = lo + std::min(kSamples, best + 1) * dt;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = prop.mean_n1_at(s0, x1);
    double f2 = prop.mean_n1_at(s0, x2);
    for (int it = 0; it < 80 && (b - a) > 1e-12 * t_guess; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = prop.mean_n1_at(s0, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = prop.mean_n1_at(s0, x2);
        }
    }
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------

TwoModeState evolve_stepped(const TwoModeHamiltonian& h, const TwoModeState& s0, double t,
                            std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::InvalidParameter, "stepped evolution needs steps >= 1");
    if (s0.m_total != h.m_total) throw Error(ErrorKind::InvalidParameter, "state and Hamiltonian sectors differ");
    const std::size_t n = h.dim();
    const double e_ref = h.diag[0];
    const double dt = t / static_cast<double>(steps);
    const cplx half(0.0, 0.5 * dt);

    linalg::SymmetricBandMatrix a = h.band();
    for (double& d : a.diag(0)) d -= e_ref;
    const std::size_t kd = a.bandwidth();

    // (1 + i dt/2 H) in LAPACK general band storage
    const std::size_t ld = 3 * kd + 1;
    std::vector<cplx> ab(ld * n, cplx(0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t lo = j >= kd ? j - kd : 0;
        const std::size_t hi = std::min(n - 1, j + kd);
        for (std::size_t i = lo; i <= hi; ++i) ab[(2 * kd + i - j) + j * ld] = (i == j ? 1.0 : 0.0) + half * a(i, j);
    }
    std::vector<lapack_int> ipiv(n);
    const auto ln = static_cast<lapack_int>(n);
    const auto lkd = static_cast<lapack_int>(kd);
    if (LAPACKE_zgbtrf(LAPACK_COL_MAJOR, ln, ln, lkd, lkd, ab.data(), static_cast<lapack_int>(ld), ipiv.data()) != 0)
        throw Error(ErrorKind::IntegratorFailure, "Crank-Nicolson factorization failed");

    const double norm0 = s0.norm();
    std::vector<cplx> psi(s0.amplitudes.data(), s0.amplitudes.data() + n);
    std::vector<cplx> hpsi(n);
    for (std::size_t s = 0; s < steps; ++s) {
        a.multiply(psi, hpsi);
        for (std::size_t i = 0; i < n; ++i) psi[i] -= half * hpsi[i];
        if (LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', ln, lkd, lkd, 1, ab.data(), static_cast<lapack_int>(ld),
                           ipiv.data(), psi.data(), ln) != 0)
            throw Error(ErrorKind::IntegratorFailure, "Crank-Nicolson solve failed");
    }

    TwoModeState out{h.m_total, Eigen::Map<Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(n))};
    if (std::abs(out.norm() - norm0) > 1e-6)
        throw Error(ErrorKind::IntegratorFailure, "norm drift exceeded 1e-6 during stepped evolution");
    out.amplitudes *= std::polar(1.0, -e_ref * t);
    return out;
}

TwoModeState evolve_exact(const TwoModeHamiltonian& h, const TwoModeState& s0, double t,
                          std::size_t steps, EvolutionMethod method) {
    if (method == EvolutionMethod::Auto)
        method = h.m_total <= kSpectralMaxParticles ? EvolutionMethod::Spectral : EvolutionMethod::Stepped;
    if (method == EvolutionMethod::Spectral) return SpectralPropagator(h).evolve(s0, t);
    return evolve_stepped(h, s0, t, steps);
}

TruncatedTrace mean_n1_trace_truncated(const TwoModeHamiltonian& h, std::span<const double> times,
                                       double tail_tol) {
    std::size_t k = std::min<std::size_t>(h.m_total, 256);
    for (;;) {
        // block of the n1 <= k states; it is itself a two-mode matrix of size k+1
        TwoModeHamiltonian block;
        block.m_total = k;
        block.coeffs = h.coeffs;
        block.diag.assign(h.diag.begin(), h.diag.begin() + static_cast<std::ptrdiff_t>(k + 1));
        block.off1.assign(h.off1.begin(), h.off1.begin() + static_cast<std::ptrdiff_t>(k));
        if (k >= 2) block.off2.assign(h.off2.begin(), h.off2.begin() + static_cast<std::ptrdiff_t>(k - 1));

        const SpectralPropagator prop(block);
        const TwoModeState s0 = TwoModeState::fock(k, 0);
        TruncatedTrace out;
        out.block = k + 1;
        out.mean_n1.resize(times.size());
        std::vector<double> tails(times.size());
        const auto nt = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t i = 0; i < nt; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const std::vector<double> p = prop.probabilities(s0, times[ui]);
            double mean = 0.0;
            double tail = 0.0;
            for (std::size_t n = 0; n < p.size(); ++n) {
                mean += static_cast<double>(n) * p[n];
                if (n + kTailWidth > k) tail += p[n];
            }
            out.mean_n1[ui] = mean;
            tails[ui] = tail;
        }
        for (double t : tails) out.tail = std::max(out.tail, t);
        if (k == h.m_total) {
            out.tail = 0.0;  // whole sector retained: nothing truncated
            return out;
        }
        if (out.tail <= tail_tol) return out;
        if (k >= kSpectralMaxParticles)
            throw Error(ErrorKind::IntegratorFailure, "truncated basis did not capture the evolution");
        k = std::min(h.m_total, 2 * k);
    }
}

// ---------------------------------------------------------------------------

OscillationLaw oscillation_law(const CouplingCoefficients& c, double m_total) {
    const double m = m_total;
    const double dm = m - c.nbar;
    const double dmu = c.mu1 - c.mu;
    const double ga2 = c.g_alpha2();
    const double detune = c.gamma * (2.0 * m - c.nbar) - dm * ga2 + dmu;

    OscillationLaw law;
    law.omega_prime_sq = detune * detune - c.gamma * c.gamma * m * m;
    law.stable = law.omega_prime_sq > 0.0 && std::isfinite(law.omega_prime_sq);
    if (!law.stable) return law;
    law.omega_prime = std::sqrt(law.omega_prime_sq);
    const double anomalous = c.g01 * c.g01 * dm * dm * m;
    law.c1 = ((m * c.gamma) * (m * c.gamma) + anomalous) / law.omega_prime_sq;
    const double lever = dm * (c.gamma - ga2) + dmu;
    law.c2 = anomalous * lever * lever / (law.omega_prime_sq * law.omega_prime_sq);
    return law;
}

double mean_n1_analytic(const OscillationLaw& law, double t) {
    if (!law.stable) throw Error(ErrorKind::InapplicableLaw, "oscillation law is unstable ((hbar w')^2 <= 0)");
    const double s = std::sin(law.omega_prime * t);
    const double cm1 = std::cos(law.omega_prime * t) - 1.0;
    return law.c1 * s * s + law.c2 * cm1 * cm1;
}

SimplifiedLaw simplified_law(double m_total, double n0, double a_over_r0) {
    const double dm = m_total - n0;
    SimplifiedLaw s;
    s.c1 = (m_total + 0.25 * dm * dm) * std::pow(a_over_r0, 0.8) / (28.0 * std::pow(n0, 0.2));
    s.c2 = dm * dm / (16.0 * m_total);
    s.omega_prime = 4.0 * std::sqrt(m_total / n0);
    return s;
}

}  // namespace bogodense
