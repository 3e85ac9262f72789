// Serial reference kernels against their OpenMP counterparts.
// Thread count follows BOGODENSE_THREADS (default: all cores).
#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bogodense/grid.hpp"
#include "bogodense/modes.hpp"
#include "bogodense/parallel.hpp"
#include "bogodense/params.hpp"
#include "bogodense/protocol.hpp"
#include "bogodense/twomode.hpp"

using namespace bogodense;

namespace {

RadialField gaussian_field(std::size_t n) {
    const RadialGrid grid(12.0, n);
    return RadialField::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
}

const CouplingCoefficients& coeffs() {
    static const CouplingCoefficients c = [] {
        const DimensionlessParams dp = with_nbar(to_dimensionless(figure1_params()), 100.0, 100.0);
        return solve_modes(dp, default_grid(dp, 2000)).coeffs;
    }();
    return c;
}

std::vector<double> linspace(double t_max, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

template <bool Parallel>
void bm_integrate(benchmark::State& st) {
    const RadialField f = gaussian_field(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Parallel ? integrate(f) : serial::integrate(f));
}

template <bool Parallel>
void bm_inner(benchmark::State& st) {
    const RadialField f = gaussian_field(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Parallel ? inner(f, f) : serial::inner(f, f));
}

template <bool Parallel>
void bm_laplacian(benchmark::State& st) {
    const RadialField f = gaussian_field(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        RadialField l = Parallel ? laplacian(f) : serial::laplacian(f);
        benchmark::DoNotOptimize(l.values.data());
    }
}

template <bool Parallel>
void bm_channel(benchmark::State& st) {
    const auto m_max = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        const DepletionChannel ch = Parallel ? DepletionChannel(coeffs(), m_max)
                                             : DepletionChannel::build_serial(coeffs(), m_max);
        benchmark::DoNotOptimize(ch.period());
    }
}

template <bool Parallel>
void bm_trace(benchmark::State& st) {
    const auto m = static_cast<std::size_t>(st.range(0));
    const SpectralPropagator prop(build_h01(coeffs(), m));
    const TwoModeState s0 = TwoModeState::fock(m, 0);
    const std::vector<double> times = linspace(5.0, 256);
    for (auto _ : st) {
        auto tr = Parallel ? mean_n1_trace(prop, s0, times) : serial::mean_n1_trace(prop, s0, times);
        benchmark::DoNotOptimize(tr.data());
    }
}

}  // namespace

BENCHMARK(bm_integrate<false>)->Name("integrate/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_integrate<true>)->Name("integrate/openmp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_inner<false>)->Name("inner/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_inner<true>)->Name("inner/openmp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_laplacian<false>)->Name("laplacian/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_laplacian<true>)->Name("laplacian/openmp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_channel<false>)->Name("channel/serial")->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_channel<true>)->Name("channel/openmp")->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_trace<false>)->Name("trace/serial")->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_trace<true>)->Name("trace/openmp")->Arg(500)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    parallel::configure_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
