#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <string>

#include "classchar/verify.hpp"

using namespace cc;

namespace {

const char* const kGroups[] = {"SL(3,3)", "O-(6,2)", "Sp(4,3)"};

const EnumeratedGroup& group(int i) {
    static std::map<int, EnumeratedGroup> cache;
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, enumerate(parse_spec(kGroups[i]))).first;
    return it->second;
}

void BM_StructureConstantsSerial(benchmark::State& state) {
    const EnumeratedGroup& G = group(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(structure_constants_serial(G));
    state.SetLabel(kGroups[state.range(0)]);
}

void BM_StructureConstantsOpenMP(benchmark::State& state) {
    const EnumeratedGroup& G = group(static_cast<int>(state.range(0)));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(structure_constants(G));
    omp_set_num_threads(omp_get_num_procs());
    state.SetLabel(std::string(kGroups[state.range(0)]) + ", " + std::to_string(state.range(1)) + " threads");
}

// Exact Frobenius identity over every class and character, b <= 3.
void BM_FrobeniusCheck(benchmark::State& state) {
    const EnumeratedGroup& G = group(static_cast<int>(state.range(0)));
    const StructureConstants sc = structure_constants(G);
    const CharTable t = dixon_table(G, sc);
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(frob_identity_check(G, sc, t));
    omp_set_num_threads(omp_get_num_procs());
    state.SetLabel(std::string(kGroups[state.range(0)]) + ", " + std::to_string(state.range(1)) + " threads");
}

void thread_args(benchmark::internal::Benchmark* b) {
    const int procs = omp_get_num_procs();
    for (int g = 0; g < 3; ++g) {
        b->Args({g, 1});
        if (procs > 1) b->Args({g, procs});
    }
}

}  // namespace

BENCHMARK(BM_StructureConstantsSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureConstantsOpenMP)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrobeniusCheck)->Apply(thread_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
