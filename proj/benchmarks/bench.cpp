#include <benchmark/benchmark.h>

#include "qinfo/circuits.hpp"
#include "qinfo/decomposition.hpp"
#include "qinfo/info.hpp"
#include "qinfo/qkd.hpp"

using namespace qinfo;

namespace {

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 2 * rng.next_double() - 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = cplx(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

void bm_tensor(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const ComplexMatrix a = random_hermitian(n, rng);
    const ComplexMatrix b = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(bm_tensor)->Arg(4)->Arg(8)->Arg(16);

void bm_eig(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const ComplexMatrix m = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}
BENCHMARK(bm_eig)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_bb84(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bb84_run(n, EveStrategy::random_basis(), 0.5, 1));
}
BENCHMARK(bm_bb84)->Arg(1000)->Arg(10000);

void bm_shor_distribution(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(shor_order_distribution(21, 5, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(bm_shor_distribution)->Arg(128)->Arg(512);

void bm_schumacher_projector(benchmark::State& state) {
    const DensityOperator rho = density_from_ensemble(Ensemble::of_pure(
        {0.5, 0.5}, {Ket({1.0, 0.0}), Ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)})}));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            schumacher_typical_projector(rho, static_cast<std::size_t>(state.range(0)), 0.1));
}
BENCHMARK(bm_schumacher_projector)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
