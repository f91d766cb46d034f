// Microbenchmarks for the hot paths: kernel-matrix assembly, potential
// sweeps, full equilibrium solves and discretization.

#include <benchmark/benchmark.h>

#include "rieszcap/analysis.hpp"

using namespace rieszcap;

namespace {

NodeCloud circle_cloud(int n) {
    return discretize(SetSpec::sphere(2, {0.0, 0.0}, 1.0), n, Scheme::boundary);
}

void BM_KernelAssembly(benchmark::State& state) {
    const auto cloud = circle_cloud(static_cast<int>(state.range(0)));
    const PairwiseDistances dists(cloud);
    const RieszExponent p(0.5);
    for (auto _ : state) {
        KernelMatrix k(p, cloud, DiagonalMode::self_cell(), dists);
        benchmark::DoNotOptimize(k.at(0, 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelAssembly)->Arg(256)->Arg(512)->Arg(1024)->Complexity();

void BM_PotentialSweep(benchmark::State& state) {
    const auto cloud = circle_cloud(static_cast<int>(state.range(0)));
    const PairwiseDistances dists(cloud);
    const auto w = WeightVector::uniform(cloud.size());
    const RieszExponent p(0.5);
    for (auto _ : state) {
        auto u = potential(p, cloud, w, DiagonalMode::exclude(), &dists);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PotentialSweep)->Arg(256)->Arg(512)->Arg(1024)->Complexity();

void BM_SolveCircle(benchmark::State& state) {
    const auto cloud = circle_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = solve_equilibrium(RieszExponent(0.5), cloud, {});
        benchmark::DoNotOptimize(r.gap);
    }
}
BENCHMARK(BM_SolveCircle)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SolveIntervalEndpoints(benchmark::State& state) {
    const auto cloud = discretize(SetSpec::interval(-1.0, 1.0),
                                  static_cast<int>(state.range(0)), Scheme::grid);
    for (auto _ : state) {
        auto r = solve_equilibrium(RieszExponent(-1.5), cloud, {});
        benchmark::DoNotOptimize(r.gap);
    }
}
BENCHMARK(BM_SolveIntervalEndpoints)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DiscretizeDisk(benchmark::State& state) {
    const auto spec = SetSpec::ball(2, {0.0, 0.0}, 1.0);
    for (auto _ : state) {
        auto c = discretize(spec, static_cast<int>(state.range(0)), Scheme::grid);
        benchmark::DoNotOptimize(c.coords.data());
    }
}
BENCHMARK(BM_DiscretizeDisk)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_GotzSpatial(benchmark::State& state) {
    const auto cloud = circle_cloud(10);
    const auto w = WeightVector::uniform(cloud.size());
    const RieszExponent p(1.0);
    for (auto _ : state) {
        auto v = gotz_spatial_energy(p, cloud, w, SpatialQuadrature{});
        benchmark::DoNotOptimize(v.value());
    }
}
BENCHMARK(BM_GotzSpatial);

}  // namespace

BENCHMARK_MAIN();
