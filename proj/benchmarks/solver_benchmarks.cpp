#include "mrnmf/mrnmf.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace mrnmf;

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return Matrix::NullaryExpr(rows, cols, [&] { return dist(rng); });
}

GraphSpec knn(std::size_t k) {
  GraphSpec spec;
  spec.k = k;
  return spec;
}

void BM_NmfStep(benchmark::State& state) {
  const auto n = state.range(0);
  const Matrix x = random_matrix(50, n, 1);
  Factors f = init_factors(50, static_cast<std::size_t>(n), 5, x.mean(), 2);
  for (auto _ : state) {
    f = nmf_step(x, f.h, f.w);
    benchmark::DoNotOptimize(f.w.data());
  }
  state.SetItemsProcessed(state.iterations() * 50 * n);
}
BENCHMARK(BM_NmfStep)->Arg(100)->Arg(400)->Arg(1600);

void BM_GnmfStep(benchmark::State& state) {
  const auto n = state.range(0);
  const Matrix x = random_matrix(50, n, 3);
  const AffinityGraph graph = build_knn_graph(NonNegMatrix(x), knn(5));
  Factors f = init_factors(50, static_cast<std::size_t>(n), 5, x.mean(), 4);
  for (auto _ : state) {
    f = gnmf_step(x, f.h, f.w, graph, 1.0);
    benchmark::DoNotOptimize(f.w.data());
  }
  state.SetItemsProcessed(state.iterations() * 50 * n);
}
BENCHMARK(BM_GnmfStep)->Arg(100)->Arg(400)->Arg(1600);

void BM_KernelStep(benchmark::State& state) {
  const auto n = state.range(0);
  const NonNegMatrix x(random_matrix(10, n, 5));
  const KernelMatrix k = gram(KernelSpec::gaussian(1.0), x);
  const EdgeSet edges = knn_edges(pairwise_distances(x.matrix(), Distance::euclidean), 5);
  const AffinityGraph graph = graph_from_kernel(k, edges);
  Factors f = init_kernel_factors(static_cast<std::size_t>(n), 5, 6);
  for (auto _ : state) {
    f = kernel_step(k, f.h, f.w, graph, 1.0);
    benchmark::DoNotOptimize(f.w.data());
  }
}
BENCHMARK(BM_KernelStep)->Arg(100)->Arg(400);

void BM_KnnGraph(benchmark::State& state) {
  const auto n = state.range(0);
  const NonNegMatrix x(random_matrix(20, n, 7));
  for (auto _ : state) {
    const AffinityGraph g = build_knn_graph(x, knn(10));
    benchmark::DoNotOptimize(g.degree().data());
  }
}
BENCHMARK(BM_KnnGraph)->Arg(100)->Arg(400)->Arg(1600);

void BM_SimplexSolve(benchmark::State& state) {
  const auto l = state.range(0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> q(0.0, 10.0);
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  const DiagQP problem{Vector::NullaryExpr(l, [&] { return q(rng); }),
                       Vector::NullaryExpr(l, [&] { return c(rng); })};
  for (auto _ : state) {
    const QpSolution s = solve_qp(problem);
    benchmark::DoNotOptimize(s.multiplier);
  }
}
BENCHMARK(BM_SimplexSolve)->Arg(3)->Arg(30)->Arg(300);

void BM_SolveMultiGraph(benchmark::State& state) {
  const SyntheticData data = make_two_clusters(20, 200, 9);
  MultiGraphConfig cfg;
  cfg.base.alpha = 1.0;
  cfg.base.tol = 1e-15;
  cfg.graphs = {knn(3), knn(7), knn(12)};
  cfg.outer_iters = 10;
  for (auto _ : state) {
    const MultiGraphResult r = solve_multi_graph(data.x, cfg);
    benchmark::DoNotOptimize(r.mu.values().data());
  }
}
BENCHMARK(BM_SolveMultiGraph)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
