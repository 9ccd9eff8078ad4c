// Serial reference vs OpenMP kernels. Thread count is the second range argument
// (0 = runtime default).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fitzcalc/kernels.hpp"
#include "fitzcalc/operators.hpp"

using namespace fitzcalc;

namespace {

struct Graph {
    std::vector<double> y, ys;
};

Graph identity_graph(std::size_t n) {
    const GraphSet g = sample_graph(OperatorSpec::affine(1, 0), make_grid(-6, 6, static_cast<long long>(n)),
                                    make_grid(-6, 6, static_cast<long long>(n)));
    Graph out;
    for (const auto& p : g.points) {
        out.y.push_back(p.x);
        out.ys.push_back(p.xs);
    }
    return out;
}

GridFn2 random_rows(std::size_t rows, std::size_t cols) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    const Grid1 a = make_grid(0, 1, static_cast<long long>(rows)), b = make_grid(-1, 1, static_cast<long long>(cols));
    GridFn2 f(a, b, Role2::Bifunction);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) f(i, j) = b[j] * b[j] + 0.1 * u(rng);
    return f;
}

void BM_fitzpatrick_reference(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Graph g = identity_graph(3 * n);
    const Grid1 x = make_grid(-2, 2, static_cast<long long>(n));
    for (auto _ : st) benchmark::DoNotOptimize(reference::fitzpatrick(g.y, g.ys, x, x));
    st.SetItemsProcessed(static_cast<long long>(st.iterations() * n * n * g.y.size()));
}

void BM_fitzpatrick_kernel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    kernels::set_threads(static_cast<int>(st.range(1)));
    const Graph g = identity_graph(3 * n);
    const Grid1 x = make_grid(-2, 2, static_cast<long long>(n));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::fitzpatrick(g.y, g.ys, x, x));
    st.SetItemsProcessed(static_cast<long long>(st.iterations() * n * n * g.y.size()));
    kernels::set_threads(0);
}

void BM_conjugate_rows_reference(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const GridFn2 f = random_rows(n, n);
    const Grid1 s = make_grid(-3, 3, static_cast<long long>(n));
    for (auto _ : st) benchmark::DoNotOptimize(reference::conjugate_rows(f, s));
}

void BM_conjugate_rows_kernel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    kernels::set_threads(static_cast<int>(st.range(1)));
    const GridFn2 f = random_rows(n, n);
    const Grid1 s = make_grid(-3, 3, static_cast<long long>(n));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::conjugate_rows(f, s));
    kernels::set_threads(0);
}

}  // namespace

BENCHMARK(BM_fitzpatrick_reference)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fitzpatrick_kernel)->ArgsProduct({{81, 161}, {1, 0}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_conjugate_rows_reference)->Arg(161)->Arg(321)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conjugate_rows_kernel)->ArgsProduct({{161, 321, 1281}, {1, 0}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
