#include <benchmark/benchmark.h>

#include <memory>

#include "evasion/attack_ap.hpp"
#include "evasion/attack_re.hpp"
#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"
#include "evasion/metrics.hpp"
#include "evasion/oracle.hpp"
#include "evasion/rng.hpp"

using namespace evasion;

namespace {

Dataset bench_dataset(std::size_t n) {
    return make_synthetic(SyntheticKind::Separable2d, n, 42);
}

Sample sample_of_dim(std::size_t d) {
    Sample s(d);
    for (std::size_t j = 0; j < d; ++j)
        s[j] = 0.5;
    return s;
}

} // namespace

static void BM_Perturb(benchmark::State& state) {
    Rng rng(1);
    const Sample x = sample_of_dim(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(perturb(x, 0.1, rng));
}
BENCHMARK(BM_Perturb)->Arg(10)->Arg(60);

static void BM_GsProbePoint(benchmark::State& state) {
    Rng rng(2);
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    Sample x_l = sample_of_dim(d), x_m = sample_of_dim(d);
    x_l[0] = 0.1;
    x_m[0] = 0.9;
    for (auto _ : state)
        benchmark::DoNotOptimize(gs_probe_point(x_l, x_m, 0.25, rng));
}
BENCHMARK(BM_GsProbePoint)->Arg(10)->Arg(60);

static void BM_TrainLinear(benchmark::State& state) {
    const Dataset ds = bench_dataset(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(train_linear(ds, 1.0));
}
BENCHMARK(BM_TrainLinear)->Arg(100)->Arg(400);

static void BM_TrainRbf(benchmark::State& state) {
    const Dataset ds = bench_dataset(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(train_rbf(ds, 0.1, 1.0));
}
BENCHMARK(BM_TrainRbf)->Arg(100)->Arg(400);

static void BM_TrainForest(benchmark::State& state) {
    const Dataset ds = bench_dataset(400);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            train_forest(ds, static_cast<int>(state.range(0)), 7));
}
BENCHMARK(BM_TrainForest)->Arg(10)->Arg(50);

static void BM_KnnPredict(benchmark::State& state) {
    const Dataset ds = bench_dataset(static_cast<std::size_t>(state.range(0)));
    const auto model = train_knn(ds, 3);
    const Sample x{0.4, 0.6};
    for (auto _ : state)
        benchmark::DoNotOptimize(model->predict(x));
}
BENCHMARK(BM_KnnPredict)->Arg(100)->Arg(1000);

static void BM_ExploreAp(benchmark::State& state) {
    const Dataset ds = bench_dataset(200);
    const auto defender = std::make_shared<LinearModel>(train_linear(ds, 1.0));
    APConfig cfg;
    cfg.b_explore = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        Rng rng(3);
        BlackBoxOracle oracle(defender, ds.d, cfg.b_explore);
        benchmark::DoNotOptimize(explore_ap({ds.samples[0]}, oracle, cfg, rng));
    }
}
BENCHMARK(BM_ExploreAp)->Arg(1000);

static void BM_ExploitAp(benchmark::State& state) {
    Rng rng(4);
    AnchorSet anchors;
    for (int i = 0; i < 500; ++i)
        anchors.anchors.push_back({rng.uniform(), rng.uniform()});
    anchors.seed_count = anchors.anchors.size();
    APConfig cfg;
    cfg.n_attack = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        Rng inner(5);
        benchmark::DoNotOptimize(exploit_ap(anchors, cfg, inner));
    }
}
BENCHMARK(BM_ExploitAp)->Arg(2000);

static void BM_Ear(benchmark::State& state) {
    const Dataset ds = bench_dataset(200);
    const LinearModel defender = train_linear(ds, 1.0);
    Rng rng(6);
    AttackSet attacks;
    for (int i = 0; i < 2000; ++i)
        attacks.samples.push_back({rng.uniform(), rng.uniform()});
    for (auto _ : state)
        benchmark::DoNotOptimize(ear(defender, attacks));
}
BENCHMARK(BM_Ear);

BENCHMARK_MAIN();
