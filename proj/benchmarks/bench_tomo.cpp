#include <benchmark/benchmark.h>

#include <random>

#include "tomo/bootstrap.hpp"
#include "tomo/entangle.hpp"
#include "tomo/pulse.hpp"
#include "tomo/recon.hpp"

using namespace tomo;

namespace {

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) h(i, j) = Complex(n(rng), n(rng));
    return h.hermitian_part();
}

DensityMatrix paper_like_state() {
    return prepare_bell_state(BellKind::PsiPlus, preparation_preset("paper-like"));
}

}  // namespace

static void BM_Eigh(benchmark::State& state) {
    const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(16)->Arg(32);

static void BM_RunSequence(benchmark::State& state) {
    const auto seq = bell_sequence(BellKind::PhiPlus);
    const double crosstalk = state.range(0) ? kPaperCrosstalk : 0.0;
    const int cutoff = state.range(0) ? kCrosstalkFockCutoff : kDefaultFockCutoff;
    for (auto _ : state) benchmark::DoNotOptimize(run_sequence(new_register(cutoff), seq, crosstalk));
}
BENCHMARK(BM_RunSequence)->Arg(0)->Arg(1);

static void BM_AnalyzeEntanglement(benchmark::State& state) {
    const auto rho = paper_like_state();
    for (auto _ : state) benchmark::DoNotOptimize(analyze_entanglement(rho));
}
BENCHMARK(BM_AnalyzeEntanglement);

static void BM_Mle(benchmark::State& state) {
    const auto data = simulate_dataset(paper_like_state(), state.range(0), 5);
    for (auto _ : state) benchmark::DoNotOptimize(mle_reconstruct(data));
}
BENCHMARK(BM_Mle)->Arg(200)->Arg(5000);

static void BM_Bootstrap(benchmark::State& state) {
    const auto rho = paper_like_state();
    const auto target = bell_state(BellKind::PsiPlus);
    BootstrapOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_errors(rho, 200, 50, 3, target, opts));
}
BENCHMARK(BM_Bootstrap)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
