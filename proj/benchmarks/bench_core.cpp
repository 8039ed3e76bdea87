#include <benchmark/benchmark.h>

#include "bft/families.hpp"
#include "bft/fourier.hpp"
#include "bft/gf2.hpp"
#include "bft/lowerbounds.hpp"
#include "bft/testers.hpp"

using namespace bft;

namespace {

TruthTable random_table(uint32_t n, Rng& rng) {
    TruthTable t = TruthTable::zeros(n);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
    return t;
}

void BM_WalshHadamard(benchmark::State& state) {
    const uint32_t n = uint32_t(state.range(0));
    Rng rng(1);
    TruthTable t = random_table(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(walsh_hadamard(t));
    state.SetComplexityN(int64_t(1) << n);
}
BENCHMARK(BM_WalshHadamard)->DenseRange(10, 18, 2)->Complexity(benchmark::oNLogN);

void BM_Gf2Rank(benchmark::State& state) {
    const uint32_t n = uint32_t(state.range(0));
    Rng rng(2);
    Gf2Matrix m = Gf2Matrix::random(n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Gf2Rank)->RangeMultiplier(2)->Range(64, 1024);

void BM_SubsetSumSearch(benchmark::State& state) {
    const uint32_t n = 24, u = uint32_t(state.range(0));
    Rng rng(3);
    std::vector<BitVector> pool;
    for (uint32_t i = 0; i < u; ++i) pool.push_back(BitVector::random(n, rng));
    SubsetSumSearcher searcher(pool);
    uint32_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(searcher.find(pool[i++ % u], 6, &rng));
    }
}
BENCHMARK(BM_SubsetSumSearch)->Arg(576)->Arg(2304);

void BM_PiHistogram(benchmark::State& state) {
    const uint32_t n = uint32_t(state.range(0)), q = 8, k = 2;
    Rng rng(4);
    std::vector<BitVector> S;
    for (uint32_t j = 0; j < q; ++j) S.push_back(BitVector::random(n, rng));
    for (auto _ : state) benchmark::DoNotOptimize(pi_histogram(S, k));
}
BENCHMARK(BM_PiHistogram)->Arg(50)->Arg(200)->Arg(800);

void BM_BlrTrial(benchmark::State& state) {
    const uint32_t n = 16, reps = uint32_t(state.range(0));
    Rng rng(5);
    BooleanFunction f = sample_uniform(Family::linear(n), rng);
    for (auto _ : state) {
        QueryOracle o = QueryOracle::classic(f, uint64_t(reps) * 3);
        benchmark::DoNotOptimize(blr_k_test(o, 1, reps, rng));
    }
}
BENCHMARK(BM_BlrTrial)->Arg(16)->Arg(64);

void BM_WalkTv(benchmark::State& state) {
    const uint64_t N = uint64_t(state.range(0));
    Rng rng(6);
    std::vector<uint64_t> gens;
    for (int i = 0; i < 40; ++i) gens.push_back(rng.below(N));
    for (auto _ : state) benchmark::DoNotOptimize(walk_tv(N, gens, 3));
}
BENCHMARK(BM_WalkTv)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
