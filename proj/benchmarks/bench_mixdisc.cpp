#include <benchmark/benchmark.h>

#include "mixdisc/ellipsoid.hpp"
#include "mixdisc/positivity.hpp"
#include "mixdisc/sampling.hpp"

using namespace mixdisc;

namespace {

template <ScalarBackend S>
MatrixTuple<S> fixed_tuple(int n) {
    Rng rng(static_cast<std::uint64_t>(n));
    return MatrixTuple<S>(random_full_rank_tuple<S>(rng, n));
}

void bm_md_perm_exact(benchmark::State& state) {
    const auto t = fixed_tuple<Rational>(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(md_perm(t));
}

void bm_md_polar_exact(benchmark::State& state) {
    const auto t = fixed_tuple<Rational>(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(md_polar(t));
}

void bm_md_perm_float(benchmark::State& state) {
    const auto t = fixed_tuple<double>(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(md_perm(t));
}

void bm_md_polar_float(benchmark::State& state) {
    const auto t = fixed_tuple<double>(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(md_polar(t));
}

void bm_determinant_exact(benchmark::State& state) {
    Rng rng(static_cast<std::uint64_t>(state.range(0)));
    const auto a = random_psd<Rational>(rng, static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(determinant(a.base()));
}

void bm_decide(benchmark::State& state) {
    const auto t = fixed_tuple<Rational>(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto verdict = decide(t);
        benchmark::DoNotOptimize(verdict);
    }
}

void bm_det_expansion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(static_cast<std::uint64_t>(n));
    std::vector<PsdMatrix<Rational>> ms;
    for (int j = 0; j < n; ++j) ms.push_back(random_psd<Rational>(rng, n, n));
    for (auto _ : state) benchmark::DoNotOptimize(det_expansion(ms));
}

void bm_polarization_check(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(static_cast<std::uint64_t>(n));
    std::vector<Ellipsoid<Rational>> es;
    Vec<Rational> lam;
    for (int j = 0; j < n; ++j) {
        es.push_back(Ellipsoid<Rational>(random_psd<Rational>(rng, n, n)));
        lam.push_back(abs(random_scalar<Rational>(rng)));
    }
    for (auto _ : state) benchmark::DoNotOptimize(volume_polarization_check(es, lam));
}

}  // namespace

BENCHMARK(bm_md_perm_exact)->DenseRange(2, 7);
BENCHMARK(bm_md_polar_exact)->DenseRange(2, 9);
BENCHMARK(bm_md_perm_float)->DenseRange(2, 7);
BENCHMARK(bm_md_polar_float)->DenseRange(2, 9);
BENCHMARK(bm_determinant_exact)->DenseRange(2, 10);
BENCHMARK(bm_decide)->DenseRange(2, 6);
BENCHMARK(bm_det_expansion)->DenseRange(2, 4);
BENCHMARK(bm_polarization_check)->DenseRange(2, 4);

BENCHMARK_MAIN();
