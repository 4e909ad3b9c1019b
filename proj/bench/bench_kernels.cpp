#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dsmg/kernels.hpp"

using namespace dsmg;
namespace k = dsmg::kernels;

namespace {

std::vector<double> uniform(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

std::vector<Scalar> complex_uniform(std::size_t n, std::uint64_t seed) {
    const auto re = uniform(n, seed);
    const auto im = uniform(n, seed + 1);
    std::vector<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
    return v;
}

template <bool Parallel>
void BM_DecayMoments(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto lambda = uniform(n, 1);
    const auto w = uniform(n, 2);
    for (auto _ : state) {
        const auto m = Parallel ? k::decay_moments(lambda, w, 0.5) : k::serial::decay_moments(lambda, w, 0.5);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_FilterCombine(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto lambda = uniform(n, 1);
    const auto a = complex_uniform(n, 3);
    const auto b = complex_uniform(n, 5);
    std::vector<Scalar> out(n);
    for (auto _ : state) {
        if (Parallel)
            k::filter_combine(lambda, a, b, 0.5, out);
        else
            k::serial::filter_combine(lambda, a, b, 0.5, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_Gemv(benchmark::State& state) {
    const Index n = state.range(0);
    k::RowMajorMatrix m(n, n);
    const auto entries = complex_uniform(static_cast<std::size_t>(n * n), 7);
    std::copy(entries.begin(), entries.end(), m.data());
    const auto x = complex_uniform(static_cast<std::size_t>(n), 9);
    std::vector<Scalar> y(static_cast<std::size_t>(n));
    for (auto _ : state) {
        if (Parallel)
            k::gemv(m, x, y);
        else
            k::serial::gemv(m, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

template <bool Parallel>
void BM_CircularConvolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto h = uniform(n, 11);
    const auto f = uniform(n, 12);
    std::vector<double> g(n);
    for (auto _ : state) {
        if (Parallel)
            k::circular_convolve(h, f, g);
        else
            k::serial::circular_convolve(h, f, g);
        benchmark::DoNotOptimize(g.data());
    }
}

}  // namespace

BENCHMARK(BM_DecayMoments<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_DecayMoments<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_FilterCombine<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_FilterCombine<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Gemv<false>)->Arg(64)->Arg(512)->Arg(2048);
BENCHMARK(BM_Gemv<true>)->Arg(64)->Arg(512)->Arg(2048);
BENCHMARK(BM_CircularConvolve<false>)->Arg(256)->Arg(4096);
BENCHMARK(BM_CircularConvolve<true>)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
