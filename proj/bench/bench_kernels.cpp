// Serial reference kernels against their OpenMP counterparts.
#include "cohest/harness.hpp"
#include "cohest/majorization.hpp"
#include "cohest/measurement.hpp"
#include "cohest/stabilizers.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cohest;

// Generators-only constraints of a noisy cluster state, which leave a
// polytope the meet must solve one LP per k for.
ConstraintSet noisy_cluster_constraints(std::size_t n) {
    const auto group = family_group(Family::NoisyCluster, n);
    const auto rho = depolarize(linear_cluster(n), 0.2);
    const auto labels = group.generator_labels();
    const auto records = simulate_records(rho, group, labels, 10000, 7);
    return build_constraints(records, group, labels, 3.0);
}

void BM_meet_serial(benchmark::State& state) {
    const auto x = noisy_cluster_constraints(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::meet_cumulative(x));
}

void BM_meet_parallel(benchmark::State& state) {
    const auto x = noisy_cluster_constraints(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(meet_cumulative(x));
}

void BM_expectations_serial(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const auto group = family_group(Family::NoisyGHZ, n);
    const auto rho = depolarize(ghz(n), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(serial::expectations(rho, group));
}

void BM_expectations_parallel(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const auto group = family_group(Family::NoisyGHZ, n);
    const auto rho = depolarize(ghz(n), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(expectations(rho, group));
}

void BM_search_serial(benchmark::State& state) {
    const auto group = family_group(Family::NoisyGHZ, 3);
    const auto rho = depolarize(ghz(3), 0.1);
    const auto labels = group.non_identity_labels();
    const auto records = simulate_records(rho, group, labels, 10000, 3);
    const auto diag = diagonal(rho);
    for (auto _ : state) benchmark::DoNotOptimize(serial::search_subsets(records, group, 3.0, diag));
}

void BM_search_parallel(benchmark::State& state) {
    const auto group = family_group(Family::NoisyGHZ, 3);
    const auto rho = depolarize(ghz(3), 0.1);
    const auto labels = group.non_identity_labels();
    const auto records = simulate_records(rho, group, labels, 10000, 3);
    const auto diag = diagonal(rho);
    for (auto _ : state) benchmark::DoNotOptimize(search_subsets(records, group, 3.0, diag));
}

} // namespace

BENCHMARK(BM_meet_serial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_meet_parallel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectations_serial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectations_parallel)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
