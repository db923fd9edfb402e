#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <lcmident/lcmident.hpp>

using namespace lcmident;

namespace {

CompartmentModel manganese_model() {
    const std::vector<std::pair<int, int>> edges = {
        {1, 2}, {1, 3}, {1, 4}, {1, 6},  {1, 8},  {2, 1},  {3, 1},
        {4, 1}, {5, 6}, {6, 1}, {6, 5},  {7, 8},  {8, 1},  {8, 7},
        {8, 9}, {8, 11}, {9, 8}, {10, 11}, {11, 8}, {11, 10}};
    return {Digraph(11, edges), {1, 10}, {1}, {5}};
}

CompartmentModel three_compartment_model() {
    return {Digraph(3, {{1, 2}, {2, 1}, {2, 3}, {3, 1}}), {1}, {1}, {1, 2, 3}};
}

Matrix<Rational> random_integer_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = Rational(static_cast<long>(rng() % 2001) - 1000);
    return m;
}

void BM_exact_rank(benchmark::State& state) {
    const auto m = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 99);
    for (auto _ : state) benchmark::DoNotOptimize(exact_rank(m));
}
BENCHMARK(BM_exact_rank)->Arg(8)->Arg(16)->Arg(24);

void BM_det_exact(benchmark::State& state) {
    const auto m = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(det_exact(m));
}
BENCHMARK(BM_det_exact)->Arg(8)->Arg(16);

void BM_char_poly_manganese(benchmark::State& state) {
    const CompartmentModel m = manganese_model();
    const auto a = compartmental_matrix(m, random_point(m, 1));
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_char_poly_manganese);

void BM_jacobian_three_compartment(benchmark::State& state) {
    const CompartmentModel m = three_compartment_model();
    const ParameterPoint pt = random_point(m, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(jacobian(MapKind::Coefficients, m, pt));
}
BENCHMARK(BM_jacobian_three_compartment);

void BM_analyze_manganese(benchmark::State& state) {
    const CompartmentModel m = manganese_model();
    for (auto _ : state) benchmark::DoNotOptimize(analyze(m, 1, 1));
}
BENCHMARK(BM_analyze_manganese)->Unit(benchmark::kMillisecond);

void BM_simple_cycles_manganese(benchmark::State& state) {
    const Digraph g = manganese_model().graph();
    for (auto _ : state) benchmark::DoNotOptimize(simple_cycles(g));
}
BENCHMARK(BM_simple_cycles_manganese);

}  // namespace

BENCHMARK_MAIN();
