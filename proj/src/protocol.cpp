#include "bogodense/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bogodense/error.hpp"

namespace bogodense {

NumberDistribution NumberDistribution::point(std::size_t m, std::size_t m_max) {
    if (m > m_max) throw Error(ErrorKind::TruncationOverflow, "point mass beyond m_max");
    NumberDistribution d{std::vector<double>(m_max + 1, 0.0)};
    d.probs[m] = 1.0;
    return d;
}

NumberDistribution NumberDistribution::two_point(std::size_t m1, std::size_t m2, std::size_t m_max) {
    if (std::max(m1, m2) > m_max) throw Error(ErrorKind::TruncationOverflow, "two-point mass beyond m_max");
    NumberDistribution d{std::vector<double>(m_max + 1, 0.0)};
    d.probs[m1] += 0.5;
    d.probs[m2] += 0.5;
    return d;
}

NumberDistribution NumberDistribution::gaussian(double mean, double sigma, std::size_t m_max) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidParameter, "gaussian sigma must be > 0");
    NumberDistribution d{std::vector<double>(m_max + 1, 0.0)};
    double peak = 0.0;
    for (std::size_t m = 0; m <= m_max; ++m) {
        const double z = (static_cast<double>(m) - mean) / sigma;
        d.probs[m] = std::exp(-0.5 * z * z);
        peak = std::max(peak, d.probs[m]);
    }
    if (!(peak > 0.0)) throw Error(ErrorKind::InvalidParameter, "gaussian has no mass on [0, m_max]");
    // negligible tails are cut so the support (and the channel size) stays finite
    for (double& p : d.probs)
        if (p < 1e-16 * peak) p = 0.0;
    const double t = d.total();
    for (double& p : d.probs) p /= t;
    return d;
}

double NumberDistribution::total() const noexcept {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double NumberDistribution::mean() const noexcept { return mean_between(-1.0, static_cast<double>(probs.size())); }

double NumberDistribution::variance() const noexcept {
    return variance_between(-1.0, static_cast<double>(probs.size()));
}

std::size_t NumberDistribution::support_max() const noexcept {
    for (std::size_t m = probs.size(); m-- > 0;)
        if (probs[m] > 0.0) return m;
    return 0;
}

double NumberDistribution::mass_between(double lo, double hi) const noexcept {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        const double x = static_cast<double>(m);
        if (x >= lo && x <= hi) s += probs[m];
    }
    return s;
}

double NumberDistribution::mean_between(double lo, double hi) const noexcept {
    double s = 0.0;
    double w = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        const double x = static_cast<double>(m);
        if (x >= lo && x <= hi) {
            s += x * probs[m];
            w += probs[m];
        }
    }
    return w > 0.0 ? s / w : 0.0;
}

double NumberDistribution::variance_between(double lo, double hi) const noexcept {
    const double mu = mean_between(lo, hi);
    double s = 0.0;
    double w = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        const double x = static_cast<double>(m);
        if (x >= lo && x <= hi) {
            s += (x - mu) * (x - mu) * probs[m];
            w += probs[m];
        }
    }
    return w > 0.0 ? s / w : 0.0;
}

// ---------------------------------------------------------------------------

double DepletionChannel::half_period(const CouplingCoefficients& coeffs) {
    const OscillationLaw law = oscillation_law(coeffs, coeffs.nbar);
    if (!law.stable)
        throw Error(ErrorKind::ProtocolInapplicable, "omega' at M = nbar is not real; depletion cycle undefined");
    return std::numbers::pi / law.omega_prime;
}

std::vector<double> DepletionChannel::sector_outcomes(const CouplingCoefficients& coeffs, std::size_t m,
                                                      double t) {
    if (m == 0) return {1.0};
    const TwoModeHamiltonian h = build_h01(coeffs, m);
    const TwoModeState s0 = TwoModeState::fock(m, 0);
    if (m <= kSpectralMaxParticles) return SpectralPropagator(h).probabilities(s0, t);
    return evolve_stepped(h, s0, t, 4000).probabilities();
}

DepletionChannel::DepletionChannel(const CouplingCoefficients& coeffs, std::size_t m_max)
    : period_(half_period(coeffs)), outcomes_(m_max + 1) {
    const auto n = static_cast<std::ptrdiff_t>(m_max + 1);
    // Sectors are independent; larger M costs more, hence the dynamic schedule.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t mm = n - 1; mm >= 0; --mm) {
        const auto m = static_cast<std::size_t>(mm);
        outcomes_[m] = sector_outcomes(coeffs, m, period_);
    }
}

DepletionChannel DepletionChannel::build_serial(const CouplingCoefficients& coeffs, std::size_t m_max) {
    DepletionChannel ch;
    ch.period_ = half_period(coeffs);
    ch.outcomes_.resize(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) ch.outcomes_[m] = sector_outcomes(coeffs, m, ch.period_);
    return ch;
}

double DepletionChannel::mean_removed(std::size_t m) const {
    const std::vector<double>& p = outcomes(m);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += static_cast<double>(k) * p[k];
    return s;
}

NumberDistribution run_cycle(const NumberDistribution& dist, const DepletionChannel& channel) {
    if (dist.support_max() > channel.m_max())
        throw Error(ErrorKind::TruncationOverflow, "distribution support exceeds the channel's m_max (" +
                                                       std::to_string(channel.m_max()) + ")");
    NumberDistribution out{std::vector<double>(dist.probs.size(), 0.0), dist.removed_total};
    double removed = 0.0;
    for (std::size_t m = 0; m < dist.probs.size(); ++m) {
        const double pm = dist.probs[m];
        if (pm == 0.0) continue;
        const std::vector<double>& outcome = channel.outcomes(m);
        for (std::size_t k = 0; k <= m; ++k) {
            out.probs[m - k] += pm * outcome[k];
            removed += pm * static_cast<double>(k) * outcome[k];
        }
    }
    out.removed_total += removed;
    return out;
}

NumberDistribution run_cycle(const NumberDistribution& dist, const ProtocolConfig& cfg,
                             const CouplingCoefficients& coeffs) {
    const std::size_t m_max = cfg.m_max ? cfg.m_max : dist.m_max();
    if (dist.support_max() > m_max)
        throw Error(ErrorKind::TruncationOverflow, "distribution support exceeds m_max");
    return run_cycle(dist, DepletionChannel(coeffs, dist.support_max()));
}

CycleSummary summarize(const NumberDistribution& dist, double n0, std::size_t cycle, double removed_this_cycle) {
    CycleSummary s;
    s.cycle = cycle;
    s.mean = dist.mean();
    s.variance = dist.variance();
    s.retained_mass = dist.mass_between(0.9 * n0, 1.1 * n0);
    s.lost_mass = dist.mass_between(-1.0, std::nextafter(0.1 * n0, 0.0));
    s.removed_this_cycle = removed_this_cycle;
    return s;
}

bool is_bimodal(const NumberDistribution& dist, double n0) {
    const double lo = 0.2 * n0;
    const double hi = 0.8 * n0;
    double below = 0.0;
    double above = 0.0;
    double window_min = 2.0;
    bool any_window = false;
    for (std::size_t m = 0; m < dist.probs.size(); ++m) {
        const double x = static_cast<double>(m);
        const double p = dist.probs[m];
        if (x < lo) {
            below = std::max(below, p);
        } else if (x > hi) {
            above = std::max(above, p);
        } else {
            window_min = std::min(window_min, p);
            any_window = true;
        }
    }
    return any_window && window_min < below && window_min < above;
}

ProtocolResult run_protocol(const NumberDistribution& init, const ProtocolConfig& cfg,
                            const CouplingCoefficients& coeffs) {
    if (cfg.cycles < 1) throw Error(ErrorKind::InvalidParameter, "protocol needs cycles >= 1");
    const std::size_t m_max = cfg.m_max ? cfg.m_max : init.m_max();
    if (init.support_max() > m_max)
        throw Error(ErrorKind::TruncationOverflow, "initial distribution extends past m_max");

    const DepletionChannel channel(coeffs, init.support_max());
    ProtocolResult res;
    res.trajectory.push_back(init);
    res.history.push_back(summarize(init, cfg.n0, 0, 0.0));
    NumberDistribution cur = init;
    for (std::size_t c = 1; c <= cfg.cycles; ++c) {
        NumberDistribution next = run_cycle(cur, channel);
        res.history.push_back(summarize(next, cfg.n0, c, next.removed_total - cur.removed_total));
        cur = std::move(next);
        res.trajectory.push_back(cur);
    }
    res.final_dist = cur;
    res.retained_mass = res.history.back().retained_mass;
    res.lost_mass = res.history.back().lost_mass;
    res.retained_variance = cur.variance_between(0.9 * cfg.n0, 1.1 * cfg.n0);
    res.bimodal = is_bimodal(cur, cfg.n0);
    return res;
}

}  // namespace bogodense
