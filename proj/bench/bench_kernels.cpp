// Serial reference vs OpenMP kernels. Argument 0 selects the serial path,
// 1 the parallel one.

#include <benchmark/benchmark.h>

#include "hclust/kernels.hpp"
#include "hclust/laplacian.hpp"
#include "hclust/random.hpp"
#include "hclust/synthetic.hpp"

using namespace hclust;

namespace {

const PointCloud& torus_cloud() {
    static const PointCloud cloud = sample_torus(4000, 2, 1, 0.01, 7);
    return cloud;
}

const CsrMatrix& torus_laplacian() {
    static const CsrMatrix l = [] {
        const auto k = build_vietoris_rips(torus_cloud(), 0.35, 2);
        return LaplacianOperator(k, 1).assemble();
    }();
    return l;
}

void BM_spmv(benchmark::State& state) {
    const auto& a = torus_laplacian();
    std::vector<double> x(a.cols(), 1.0), y(a.rows());
    Rng rng(1);
    for (double& v : x) v = rng.normal();
    for (auto _ : state) {
        if (state.range(0) == 0)
            kernels::spmv_serial(a.row_ptr(), a.col_idx(), a.values(), x, y);
        else
            kernels::spmv_parallel(a.row_ptr(), a.col_idx(), a.values(), x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.values().size()));
}
BENCHMARK(BM_spmv)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_neighbors(benchmark::State& state) {
    const auto& c = torus_cloud();
    for (auto _ : state) {
        auto n = state.range(0) == 0 ? kernels::upper_neighbors_serial(c.coords, c.dim, 0.35)
                                     : kernels::upper_neighbors_parallel(c.coords, c.dim, 0.35);
        benchmark::DoNotOptimize(n.data());
    }
}
BENCHMARK(BM_neighbors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_cliques(benchmark::State& state) {
    const auto& c = torus_cloud();
    const auto upper = kernels::upper_neighbors_serial(c.coords, c.dim, 0.35);
    for (auto _ : state) {
        auto k = state.range(0) == 0 ? kernels::cliques_serial(upper, 3) : kernels::cliques_parallel(upper, 3);
        benchmark::DoNotOptimize(k.data());
    }
}
BENCHMARK(BM_cliques)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_projection(benchmark::State& state) {
    const std::size_t n = 200000, dim = 3, k = 3;
    Rng rng(2);
    std::vector<double> pts(n * dim), dirs(k * dim), out(n * k);
    for (double& v : pts) v = rng.normal();
    for (double& v : dirs) v = rng.normal();
    for (auto _ : state) {
        if (state.range(0) == 0)
            kernels::projection_norms_serial(pts, dirs, dim, 0.01, out);
        else
            kernels::projection_norms_parallel(pts, dirs, dim, 0.01, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_projection)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
