// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "adhesia/category.hpp"
#include "adhesia/encodings.hpp"
#include "support/generators.hpp"

using namespace adhesia;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_AllMorphisms(benchmark::State& state) {
    const CoalgGraph G = fixture_graph("fig6.graph");
    const Rule rule = std::get<Rule>(fixture("fig6.rule"));
    for (auto _ : state) benchmark::DoNotOptimize(all_morphisms(rule.L, G, true, exec_of(state)));
}

void BM_PreservationBatch(benchmark::State& state) {
    gen::Rng rng(7);
    std::vector<Cospan> cospans;
    for (int i = 0; i < 64; ++i) cospans.push_back(gen::random_cospan(3, true, rng));
    const FunctorExpr F = parse_functor("PPa(N + E)");
    for (auto _ : state)
        benchmark::DoNotOptimize(
            check_pb_preservation_batch(F, cospans, {2, 2, 2}, PreservationMode::AlongMonos, exec_of(state)));
}

void BM_VkBatch(benchmark::State& state) {
    gen::Rng rng(11);
    std::vector<VkCube> cubes;
    for (int i = 0; i < 256; ++i) cubes.push_back(gen::random_vk_cube(rng));
    for (auto _ : state) benchmark::DoNotOptimize(vk_cube_check_batch(cubes, exec_of(state)));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the parallel kernel.
BENCHMARK(BM_AllMorphisms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservationBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VkBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
