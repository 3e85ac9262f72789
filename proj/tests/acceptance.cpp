// Acceptance suite: one PASS/FAIL line per criterion, with the measured values.
// `acceptance` runs everything; `acceptance N` runs criterion N only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bogodense/bdg.hpp"
#include "bogodense/gpe.hpp"
#include "bogodense/modes.hpp"
#include "bogodense/parallel.hpp"
#include "bogodense/protocol.hpp"
#include "bogodense/twomode.hpp"
#include "test_support.hpp"

using namespace bogodense;
using testsupport::rel_err;

namespace {

constexpr double kPiA = std::numbers::pi;

struct Report {
    bool pass = true;
    std::vector<std::string> lines;

    // Binding sub-check.
    void check(bool ok, const char* fmt, auto... args) {
        pass = pass && ok;
        add(ok ? "ok  " : "MISS", fmt, args...);
    }
    // Reported, not binding.
    void info(const char* fmt, auto... args) { add("info", fmt, args...); }

private:
    void add(const char* tag, const char* fmt, auto... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        lines.push_back(std::string("    [") + tag + "] " + buf);
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Report&)> body;
};

DimensionlessParams fig1() { return to_dimensionless(figure1_params()); }

ModeSet modes_at(double nbar, std::size_t points = RadialGrid::kDefaultPoints) {
    const DimensionlessParams dp = with_nbar(fig1(), nbar, nbar);
    return solve_modes(dp, default_grid(dp, points));
}

// --- 1 ---------------------------------------------------------------------
void tf_closed_forms(Report& r) {
    const DimensionlessParams dp = fig1();
    const ModeSet ms = solve_modes(dp, default_grid(dp));
    const CouplingCoefficients& c = ms.coeffs;
    const double b = dp.b_tf;
    const double n = dp.nbar;
    auto row = [&](const char* name, double got, double ref, double tol) {
        const double e = rel_err(got, ref);
        r.check(e <= tol, "%-7s numeric %.6g  closed form %.6g  rel.err %.3f (tol %.2f)", name, got, ref, e, tol);
    };
    row("mu", c.mu, b / 2.0, 0.05);
    row("g*a2", c.g_alpha2(), 2.0 * b / (7.0 * n), 0.10);
    row("g/beta", c.g01, 2.0 * b / (7.0 * std::sqrt(6.0) * n), 0.10);
    row("gamma", c.gamma, 20.0 * b / (77.0 * n), 0.10);
    row("mu1-mu", c.mu1_minus_mu(), 63.0 / (2.0 * b), 0.15);
    r.info("B = %.4f; exact Thomas-Fermi integral gives mu1-mu = 63/(4B) = %.4f (numeric/that = %.3f)", b,
           63.0 / (4.0 * b), c.mu1_minus_mu() / (63.0 / (4.0 * b)));
}

// --- 2 ---------------------------------------------------------------------
void analytic_vs_exact(Report& r) {
    const ModeSet ms = modes_at(1e3);
    const std::size_t m = 1000;
    const OscillationLaw law = oscillation_law(ms.coeffs, double(m));
    r.check(law.stable, "law stable at M = nbar = 1e3: omega' = %.6f, c1 = %.5f, c2 = %.3g", law.omega_prime, law.c1,
            law.c2);
    if (!law.stable) return;
    const double period = 2.0 * kPiA / law.omega_prime;
    const SpectralPropagator prop(build_h01(ms.coeffs, m));
    const TwoModeState s0 = TwoModeState::fock(m, 0);
    std::vector<double> times(2001);
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = period * double(i) / double(times.size() - 1);
    const std::vector<double> exact = mean_n1_trace(prop, s0, times);
    double dev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) dev = std::max(dev, std::abs(exact[i] - mean_n1_analytic(law, times[i])));
    const double amp = std::max(law.amplitude(), 1e-3);
    r.check(dev <= 0.15 * amp, "max |exact - law| over one period = %.4f = %.3f of amplitude %.4f (tol 0.15)", dev,
            dev / amp, amp);
    const double t_ret = first_return_time(prop, s0, kPiA / law.omega_prime);
    const double w_ext = kPiA / t_ret;
    r.check(rel_err(w_ext, law.omega_prime) <= 0.02, "extracted frequency %.6f vs omega' %.6f, rel.err %.4f (tol 0.02)",
            w_ext, law.omega_prime, rel_err(w_ext, law.omega_prime));
}

// --- 3 ---------------------------------------------------------------------
void paper_magnitudes(Report& r) {
    const DimensionlessParams dp = fig1();
    const ModeSet ms = solve_modes(dp, default_grid(dp));
    const double n0 = dp.n0;
    const OscillationLaw law = oscillation_law(ms.coeffs, n0);
    const double c1_ref = std::pow(n0, 0.8) / 470.0;
    r.check(law.stable && rel_err(law.c1, c1_ref) <= 0.25, "c1 = %.4f vs N0^(4/5)/470 = %.4f, rel.err %.3f (tol 0.25)",
            law.c1, c1_ref, rel_err(law.c1, c1_ref));
    r.check(law.stable && rel_err(law.omega_prime, 4.0) <= 0.10, "omega'/omega = %.4f vs 4.0, rel.err %.3f (tol 0.10)",
            law.omega_prime, rel_err(law.omega_prime, 4.0));
    const OscillationLaw tf = oscillation_law(thomas_fermi_coefficients(dp), n0);
    r.info("with Thomas-Fermi closed-form coefficients (mu1-mu = 63/(4B)): c1 = %.4f, omega' = %.4f", tf.c1,
           tf.omega_prime);
}

// --- 4 ---------------------------------------------------------------------
void depletion_rate(Report& r) {
    const ModeSet ms = modes_at(400.0);
    const DepletionChannel ch(ms.coeffs, 420);
    for (std::size_t m : {380u, 420u}) {
        const OscillationLaw law = oscillation_law(ms.coeffs, double(m));
        const double removed = ch.mean_removed(m);
        const double ref = 4.0 * law.c2;
        r.check(law.stable && rel_err(removed, ref) <= 0.5,
                "M = %zu: exact mean removal %.4f vs 4c2 = %.4f, ratio %.3f (tol +-50%%)", m, removed, ref,
                removed / ref);
    }
}

// --- 5 ---------------------------------------------------------------------
void bifurcation(Report& r) {
    const ModeSet ms = modes_at(100.0);
    ProtocolConfig cfg;
    cfg.n0 = 100.0;
    cfg.cycles = 200;
    const ProtocolResult res = run_protocol(NumberDistribution::two_point(80, 120, 120), cfg, ms.coeffs);
    r.check(std::abs(res.retained_mass - 0.5) <= 0.1, "retained mass %.6f (0.5 +- 0.1) after %zu cycles",
            res.retained_mass, cfg.cycles);
    r.check(res.bimodal, "final distribution bimodal: %s (lost mass %.6f)", res.bimodal ? "yes" : "no", res.lost_mass);
    double worst = 0.0;
    for (const NumberDistribution& d : res.trajectory) worst = std::max(worst, std::abs(d.total() - 1.0));
    r.info("max |sum P - 1| over the trajectory %.2e", worst);
}

// --- 6 ---------------------------------------------------------------------
void bdg_sum_rule(Report& r) {
    const DimensionlessParams dp = fig1();
    const ModeSet ms = solve_modes(dp, default_grid(dp));
    const QuasiparticleSpectrum spec = solve_bdg(ms.ground, dp, 8);
    const Mode1Decomposition d = decompose_mode1(ms.mode1, spec);
    const double sum = 1.0 - d.residual;
    r.check(std::abs(sum - 1.0) <= 0.05, "sum_k (p_k^2 - q_k^2) = %.6f over 8 modes (1 +- 0.05)", sum);
    r.check(std::abs(d.weight_from(3)) <= 0.05, "weight of k >= 3 = %.5f (|.| <= 0.05)", d.weight_from(3));
    const double refs[3] = {1.755, 1.443, 0.986};
    const double got[3] = {std::abs(d.p[0]), std::abs(d.q[0]), std::abs(d.p[1])};
    const char* names[3] = {"|p1|", "|q1|", "|p2|"};
    for (int i = 0; i < 3; ++i)
        r.info("%s = %.4f vs %.3f, rel.err %.3f (reported tolerance 0.20: %s)", names[i], got[i], refs[i],
               rel_err(got[i], refs[i]), rel_err(got[i], refs[i]) <= 0.2 ? "within" : "outside");
    r.info("omega_1..3 = %.4f %.4f %.4f; |q2| = %.4f; C = %.4f", spec.modes[0].omega, spec.modes[1].omega,
           spec.modes[2].omega, std::abs(d.q[1]), spec.c_const);
}

// --- 7 ---------------------------------------------------------------------
double order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

void property_suites(Report& r) {
    {
        auto quad = [](std::size_t n) {
            const RadialGrid g(40.0, n);
            return std::abs(integrate(RadialField::sample(g, [](double x) { return std::exp(-x) / x; })) - 4.0 * kPiA);
        };
        const double p = order(quad(2000), quad(4000));
        r.check(std::abs(p - 2.0) <= 0.1, "quadrature order %.3f (2 +- 0.1)", p);
    }
    {
        auto lap = [](std::size_t n) {
            const RadialGrid g(10.0, n);
            const RadialField l = laplacian(RadialField::sample(g, [](double x) { return std::exp(-x * x); }));
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = g.r(i);
                e = std::max(e, std::abs(l[i] - (4.0 * x * x - 6.0) * std::exp(-x * x)));
            }
            return e;
        };
        const double p = order(lap(500), lap(1000));
        r.check(std::abs(p - 2.0) <= 0.1, "Laplacian order %.3f (2 +- 0.1)", p);
    }
    {
        CouplingCoefficients c;
        c.g = 0.37;
        c.alpha2 = 0.021;
        c.beta = 3.3;
        c.g01 = c.g / c.beta;
        c.gamma = 0.0123;
        c.mu = 1.7;
        c.mu1 = 2.45;
        c.nbar = 2.5;
        double worst = 0.0;
        for (std::size_t m = 1; m <= 4; ++m)
            worst = std::max(worst, (build_h01(c, m).dense() - testsupport::brute_force_h01(c, m)).cwiseAbs().maxCoeff());
        r.check(worst <= 1e-12, "M <= 4 ladder-operator oracle: max element difference %.2e", worst);
    }
    {
        const ModeSet ms = modes_at(1e3, 2000);
        const TwoModeHamiltonian h = build_h01(ms.coeffs, 1000);
        const SpectralPropagator prop(h);
        const TwoModeState s0 = TwoModeState::fock(1000, 0);
        double drift = 0.0;
        for (double t : {0.3, 1.0, 4.0, 20.0}) {
            const TwoModeState s = prop.evolve(s0, t);
            drift = std::max({drift, std::abs(s.norm() - 1.0), std::abs(mean_n0(s) + mean_n1(s) - 1000.0) / 1000.0});
        }
        const TwoModeState cn = evolve_stepped(build_h01(modes_at(100.0, 2000).coeffs, 100), TwoModeState::fock(100, 0),
                                               2.0, 2000);
        drift = std::max(drift, std::abs(cn.norm() - 1.0));
        r.check(drift <= 1e-8, "norm / number conservation drift %.2e (<= 1e-8)", drift);
    }
    {
        const ModeSet ms = modes_at(100.0, 2000);
        const NumberDistribution init = NumberDistribution::gaussian(100.0, 10.0, 150);
        const DepletionChannel ch(ms.coeffs, init.m_max());
        NumberDistribution d = init;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            d = run_cycle(d, ch);
            worst = std::max(worst, std::abs(d.total() - 1.0));
        }
        r.check(worst <= 1e-9, "probability conservation over 100 cycles %.2e (<= 1e-9)", worst);
    }
    {
        PhysicalParams p = figure1_params();
        p.scattering_length_m = 0.0;
        const DimensionlessParams dp = to_dimensionless(p);
        const GroundMode gm = solve_gpe(dp, default_grid(dp));
        r.check(std::abs(gm.mu - 1.5) <= 1e-4, "g = 0 ground state mu = %.8f (1.5 +- 1e-4)", gm.mu);
        const QuasiparticleSpectrum spec = solve_bdg(gm, dp, 5);
        double vmax = 0.0;
        double werr = 0.0;
        for (std::size_t k = 0; k < spec.modes.size(); ++k) {
            for (double v : spec.modes[k].v.values) vmax = std::max(vmax, std::abs(v));
            werr = std::max(werr, rel_err(spec.modes[k].omega, 2.0 * double(k + 1)));
        }
        r.check(vmax == 0.0, "g = 0 BdG max |v_k| = %.2e", vmax);
        r.check(werr <= 0.02, "g = 0 BdG omega_k = 2k, worst rel.err %.2e (<= 0.02)", werr);
    }
}

}  // namespace

int main(int argc, char** argv) {
    parallel::configure_from_env();
    const std::vector<Criterion> all{
        {1, "Thomas-Fermi closed forms from the numeric ground mode", 60.0, tf_closed_forms},
        {2, "analytic oscillation law vs exact two-mode evolution", 60.0, analytic_vs_exact},
        {3, "oscillation magnitudes c1 and omega' at N0 = 1e5", 10.0, paper_magnitudes},
        {4, "single-cycle depletion removes about 4 c2", 120.0, depletion_rate},
        {5, "protocol bifurcation with 50% retention", 300.0, bifurcation},
        {6, "quasiparticle sum rule and two-mode dominance", 300.0, bdg_sum_rule},
        {7, "always-on property suites", 300.0, property_suites},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(all.size())) {
            std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], all.size());
            return 2;
        }
    }

    bool all_pass = true;
    for (const Criterion& c : all) {
        if (only && c.id != only) continue;
        Report r;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(r);
        } catch (const Error& e) {
            r.check(false, "error [%s]: %s", std::string(e.category()).c_str(), e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.check(secs <= c.budget_s, "runtime %.2f s (budget %.0f s)", secs, c.budget_s);
        std::printf("%s criterion %d: %s\n", r.pass ? "PASS" : "FAIL", c.id, c.title);
        for (const std::string& l : r.lines) std::printf("%s\n", l.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
