#include <benchmark/benchmark.h>

#include <random>

#include "kpk/baselines.hpp"
#include "kpk/cluster.hpp"
#include "kpk/datagen.hpp"
#include "kpk/metrics.hpp"
#include "kpk/multi_kernel.hpp"
#include "kpk/power_mean.hpp"

namespace {

kpk::Matrix points(int n, int p) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    kpk::Matrix x(n, p);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
    return x;
}

void BM_PowerMeanWeights(benchmark::State& state) {
    std::vector<double> y(static_cast<std::size_t>(state.range(0)));
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = 1.0 + 0.37 * static_cast<double>(j);
    std::vector<double> out(y.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::power_mean_log_weights(y, -48.0, out));
    }
}
BENCHMARK(BM_PowerMeanWeights)->Arg(2)->Arg(10)->Arg(100);

void BM_GramGaussian(benchmark::State& state) {
    const auto x = points(static_cast<int>(state.range(0)), 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::gram_matrix(kpk::GaussianKernel{1.0}, x).values.data());
    }
}
BENCHMARK(BM_GramGaussian)->Arg(250)->Arg(1000);

void BM_CentroidDistances(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto g = kpk::gram_matrix(kpk::GaussianKernel{1.0}, points(n, 5));
    const kpk::Matrix w = kpk::Matrix::Random(n, 10).cwiseAbs();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::centroid_distances(g, w).data());
    }
}
BENCHMARK(BM_CentroidDistances)->Arg(250)->Arg(1000);

void BM_KpkIteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto g = kpk::gram_matrix(kpk::GaussianKernel{1.0}, points(n, 2));
    kpk::KpkOptions o;
    o.k = 10;
    o.max_iter = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::run_kpk(g, o).objective_trace.back());
    }
    state.SetItemsProcessed(state.iterations() * o.max_iter);
}
BENCHMARK(BM_KpkIteration)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MkpkIteration(benchmark::State& state) {
    const auto x = points(500, 4);
    std::vector<kpk::GramMatrix> grams;
    for (const auto& spec : kpk::standard_kernel_bank(1.0)) {
        grams.push_back(kpk::normalize_gram(kpk::gram_matrix(spec, x)));
    }
    kpk::MkpkOptions o;
    o.k = 5;
    o.max_iter = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::run_mkpk(grams, o).objective_trace.back());
    }
    state.SetItemsProcessed(state.iterations() * o.max_iter);
}
BENCHMARK(BM_MkpkIteration)->Unit(benchmark::kMillisecond);

void BM_KernelKmeans(benchmark::State& state) {
    const auto data = kpk::gen_rings(kpk::RingsConfig{});
    const auto g = kpk::gram_matrix(kpk::GaussianKernel{1.0}, data.x);
    kpk::KernelKmeansOptions o;
    o.k = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::kernel_kmeans(g, o).iterations);
    }
}
BENCHMARK(BM_KernelKmeans)->Unit(benchmark::kMillisecond);

void BM_Metrics(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> lab(0, 9);
    kpk::Labels a(10000), b(10000);
    for (auto& v : a) v = lab(rng);
    for (auto& v : b) v = lab(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kpk::nmi(a, b) + kpk::ari(a, b));
    }
}
BENCHMARK(BM_Metrics);

}  // namespace

BENCHMARK_MAIN();
