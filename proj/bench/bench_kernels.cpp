// Serial reference vs OpenMP kernels on random sparse occurrence matrices.
#include "semmap/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using semmap::DenseMatrix;
using semmap::SparseCounts;

auto random_counts(std::size_t rows, std::size_t cols, double fill, std::uint64_t seed) -> SparseCounts
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution hit(fill);
    std::geometric_distribution<int> count(0.6);
    DenseMatrix<std::int64_t> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (hit(rng)) {
                m(r, c) = 1 + count(rng);
            }
        }
    }
    // Every column needs at least one entry for cosine.
    for (std::size_t c = 0; c < cols; ++c) {
        m(c % rows, c) += 1;
    }
    return SparseCounts::from_dense(m);
}

template <auto Gram>
void bm_gram(benchmark::State& state)
{
    const auto m = random_counts(4000, static_cast<std::size_t>(state.range(0)), 0.02, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Gram(m));
    }
}

template <auto Cosine>
void bm_cosine(benchmark::State& state)
{
    const auto g = semmap::kernels::serial::gram(random_counts(4000, static_cast<std::size_t>(state.range(0)), 0.02, 7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Cosine(g));
    }
}

template <auto Pearson>
void bm_pearson(benchmark::State& state)
{
    const auto m = random_counts(4000, static_cast<std::size_t>(state.range(0)), 0.02, 7);
    const auto g = semmap::kernels::serial::gram(m);
    const auto sums = semmap::kernels::column_sums(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Pearson(g, sums, m.rows));
    }
}

}  // namespace

BENCHMARK(bm_gram<semmap::kernels::serial::gram>)->Name("gram/serial")->Arg(100)->Arg(400);
BENCHMARK(bm_gram<semmap::kernels::parallel::gram>)->Name("gram/parallel")->Arg(100)->Arg(400);
BENCHMARK(bm_cosine<semmap::kernels::serial::cosine>)->Name("cosine/serial")->Arg(100)->Arg(400);
BENCHMARK(bm_cosine<semmap::kernels::parallel::cosine>)->Name("cosine/parallel")->Arg(100)->Arg(400);
BENCHMARK(bm_pearson<semmap::kernels::serial::pearson>)->Name("pearson/serial")->Arg(100)->Arg(400);
BENCHMARK(bm_pearson<semmap::kernels::parallel::pearson>)->Name("pearson/parallel")->Arg(100)->Arg(400);

BENCHMARK_MAIN();
