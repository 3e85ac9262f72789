#pragma once

#include <cstddef>
#include <vector>

#include "bogodense/modes.hpp"
#include "bogodense/twomode.hpp"

namespace bogodense {

/// Probability of each total ground-mode occupation M = 0..m_max.
struct NumberDistribution {
    std::vector<double> probs;
    double removed_total = 0.0;  // mean particles removed so far

    static NumberDistribution point(std::size_t m, std::size_t m_max);
    static NumberDistribution two_point(std::size_t m1, std::size_t m2, std::size_t m_max);
    /// Discretized normal (mean, sigma), truncated to [0, m_max] and renormalized.
    static NumberDistribution gaussian(double mean, double sigma, std::size_t m_max);

    std::size_t m_max() const noexcept { return probs.empty() ? 0 : probs.size() - 1; }
    double total() const noexcept;
    double mean() const noexcept;
    double variance() const noexcept;
    /// Largest M with nonzero probability.
    std::size_t support_max() const noexcept;
    /// Probability mass on lo <= M <= hi (real bounds).
    double mass_between(double lo, double hi) const noexcept;
    double mean_between(double lo, double hi) const noexcept;
    double variance_between(double lo, double hi) const noexcept;
};

enum class Depletion { Projective };

struct ProtocolConfig {
    double n0 = 100.0;
    std::size_t cycles = 200;
    std::size_t m_max = 0;  // 0: take it from the initial distribution
    Depletion depletion = Depletion::Projective;
};

/// Outcome distributions P(n1 | M) of one evolve-then-measure step, for every
/// M = 0..m_max, at the common time T = pi/omega'(M = nbar).
class DepletionChannel {
public:
    /// Throws Error(ProtocolInapplicable) if omega' at M = nbar is not real.
    DepletionChannel(const CouplingCoefficients& coeffs, std::size_t m_max);

    double period() const noexcept { return period_; }
    std::size_t m_max() const noexcept { return outcomes_.size() - 1; }
    /// P(n1 = k | M) for k = 0..M.
    const std::vector<double>& outcomes(std::size_t m) const { return outcomes_.at(m); }
    /// Sum_k k P(k | M)
    double mean_removed(std::size_t m) const;

    /// Sector evaluation with the serial loop (reference for the OpenMP build).
    static DepletionChannel build_serial(const CouplingCoefficients& coeffs, std::size_t m_max);

private:
    DepletionChannel() = default;
    static double half_period(const CouplingCoefficients& coeffs);
    static std::vector<double> sector_outcomes(const CouplingCoefficients& coeffs,
                                               std::size_t m, double t);

    double period_ = 0.0;
    std::vector<std::vector<double>> outcomes_;
};

/// One depletion cycle: M -> M - n1 with n1 drawn from the channel.
/// Throws Error(TruncationOverflow) if dist extends past the channel's m_max.
NumberDistribution run_cycle(const NumberDistribution& dist, const DepletionChannel& channel);

/// Convenience form building the channel for dist's support.
NumberDistribution run_cycle(const NumberDistribution& dist, const ProtocolConfig& cfg,
                             const CouplingCoefficients& coeffs);

struct CycleSummary {
    std::size_t cycle = 0;
    double mean = 0.0;
    double variance = 0.0;
    double retained_mass = 0.0;  // mass in [0.9 n0, 1.1 n0]
    double lost_mass = 0.0;      // mass below 0.1 n0
    double removed_this_cycle = 0.0;
};

struct ProtocolResult {
    std::vector<CycleSummary> history;            // cycle 0 = initial
    std::vector<NumberDistribution> trajectory;   // distribution after each cycle (0 = initial)
    NumberDistribution final_dist;
    double retained_mass = 0.0;
    double lost_mass = 0.0;
    double retained_variance = 0.0;
    bool bimodal = false;
};

CycleSummary summarize(const NumberDistribution& dist, double n0, std::size_t cycle,
                       double removed_this_cycle);

/// True when some M in [0.2 n0, 0.8 n0] carries less probability than the
/// largest value both below and above that window.
bool is_bimodal(const NumberDistribution& dist, double n0);

ProtocolResult run_protocol(const NumberDistribution& init, const ProtocolConfig& cfg,
                            const CouplingCoefficients& coeffs);

}  // namespace bogodense
