#include <benchmark/benchmark.h>

#include "mfap/arith.hpp"
#include "mfap/meanvalues.hpp"
#include "mfap/parallel.hpp"
#include "mfap/pretension.hpp"
#include "mfap/sieve_experiments.hpp"

using namespace mfap;

namespace {

const PrimeTable& table() {
    static const PrimeTable t(10'000'000);
    return t;
}

void BM_SievePrimes(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_ProgressionSums(benchmark::State& state) {
    set_thread_count(static_cast<unsigned>(state.range(1)));
    const auto x = static_cast<std::uint64_t>(state.range(0));
    const auto f = FunctionSpec::mobius();
    table();  // built outside the timed loop
    for (auto _ : state) benchmark::DoNotOptimize(progression_sums(f, x, 5, table()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProgressionSums)
    ->Args({1'000'000, 1})
    ->Args({10'000'000, 1})
    ->Args({10'000'000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_MinDistanceOverT(benchmark::State& state) {
    set_thread_count(1);
    const auto x = static_cast<std::uint64_t>(state.range(0));
    const auto psi = DirichletCharacter::from_index(5, 2);
    const auto f = FunctionSpec::mobius();
    table();
    for (auto _ : state) benchmark::DoNotOptimize(min_distance_over_t(f, psi, x, 2.0, table()));
}
BENCHMARK(BM_MinDistanceOverT)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_BadModuli(benchmark::State& state) {
    set_thread_count(static_cast<unsigned>(state.range(1)));
    const auto x = static_cast<std::uint64_t>(state.range(0));
    const auto f = FunctionSpec::mobius();
    table();
    for (auto _ : state) benchmark::DoNotOptimize(bad_moduli(f, x, 5, 1, 0.2, table()));
}
BENCHMARK(BM_BadModuli)->Args({100'000, 1})->Args({1'000'000, 1})->Args({1'000'000, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
