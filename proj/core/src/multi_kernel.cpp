#include "mrnmf/multi_kernel.hpp"

#include "mrnmf/errors.hpp"
#include "updates.hpp"

#include <cmath>
#include <optional>

namespace mrnmf {

void MultiKernelConfig::validate() const {
  base.validate();
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  if (kernels.empty()) throw ParameterError("kernels: candidate bank is empty");
  if (k_neighbors < 1) throw ParameterError("k_neighbors must be >= 1");
  if (inner_iters < 1) throw ParameterError("inner_iters must be >= 1");
  for (const auto& k : kernels) k.validate();
}

namespace {

void check_kernel_factors(const KernelMatrix& k, const Matrix& g, const Matrix& w,
                          const char* who) {
  const auto n = static_cast<Eigen::Index>(k.n());
  if (g.rows() != n || w.cols() != n || g.cols() != w.rows()) {
    throw DimensionError(std::string(who) + ": K is " + std::to_string(n) + "x" +
                         std::to_string(n) + ", G is " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()) + ", W is " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()));
  }
}

}  // namespace

double kernel_objective(const KernelMatrix& k, const Matrix& g, const Matrix& w) {
  check_kernel_factors(k, g, w, "kernel_objective");
  const Matrix& km = k.gram();
  const Matrix kg = km * g;
  const Matrix gtkg = g.transpose() * kg;
  const Matrix wwt = w * w.transpose();
  // tr(K G W) = sum_ij (KG)_ij W_ji ; tr(K G W W^T G^T) = <G^T K G, W W^T>.
  return km.trace() - 2.0 * kg.cwiseProduct(w.transpose()).sum() + gtkg.cwiseProduct(wwt).sum();
}

Vector per_kernel_energies(std::span<const KernelMatrix> kernels, const Matrix& g,
                           const Matrix& w, const EdgeSet& edges, double alpha) {
  Vector e(static_cast<Eigen::Index>(kernels.size()));
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    double value = kernel_objective(kernels[k], g, w);
    if (alpha != 0.0) value += alpha * regularizer_value(graph_from_kernel(kernels[k], edges), w);
    e(static_cast<Eigen::Index>(k)) = value;
  }
  return e;
}

SimplexWeights update_mu_kernel(const Vector& energies, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  return solve(DiagQP{Vector::Constant(energies.size(), beta), energies});
}

double multi_kernel_objective(std::span<const KernelMatrix> kernels, const Matrix& g,
                              const Matrix& w, const EdgeSet& edges, const SimplexWeights& mu,
                              double alpha, double beta) {
  const KernelMatrix combined = combine(kernels, mu);
  double value = kernel_objective(combined, g, w);
  if (alpha != 0.0) value += alpha * regularizer_value(graph_from_kernel(combined, edges), w);
  return value + beta * mu.values().squaredNorm();
}

Factors kernel_step(const KernelMatrix& k, const Matrix& g, const Matrix& w,
                    const AffinityGraph& graph_mu, double alpha) {
  check_kernel_factors(k, g, w, "kernel_step");
  detail::check_graph_size(graph_mu, w, "kernel_step");
  const Matrix& km = k.gram();
  Factors next{g, w};
  {
    const Matrix num = km * next.w.transpose();
    const Matrix wwt = next.w * next.w.transpose();
    const Matrix den = km * (next.h * wwt);
    multiplicative_update(next.h, num, den);
  }
  const Matrix gtk = next.h.transpose() * km;
  detail::update_w(next.w, gtk, gtk * next.h, &graph_mu, alpha);
  return next;
}

Factors init_kernel_factors(std::size_t n, std::size_t m, std::uint64_t seed) {
  return init_factors(n, n, m, 1.0 / static_cast<double>(n), seed);
}

MultiKernelResult solve_multi_kernel(const NonNegMatrix& x, const MultiKernelConfig& cfg) {
  cfg.validate();
  std::vector<std::optional<KernelMatrix>> built(cfg.kernels.size());
  parallel_for(cfg.kernels.size(), [&](std::size_t k) { built[k].emplace(gram(cfg.kernels[k], x)); });
  std::vector<KernelMatrix> bank;
  bank.reserve(built.size());
  for (auto& k : built) bank.push_back(std::move(*k));

  const EdgeSet edges = knn_edges(pairwise_distances(x.matrix(), Distance::euclidean),
                                  cfg.k_neighbors);
  const double alpha = cfg.base.alpha;
  const double beta = cfg.beta;

  auto run = [&](std::uint64_t seed) {
    Factors f = init_kernel_factors(x.cols(), cfg.base.m, seed);
    SimplexWeights mu = SimplexWeights::uniform(bank.size());
    auto objective = [&] {
      return multi_kernel_objective(bank, f.h, f.w, edges, mu, alpha, beta);
    };

    SolveReport report;
    report.seed = seed;
    report.objective_trace.push_back(objective());
    report.phase_trace.push_back({0, Phase::init, report.objective_trace.back()});
    for (std::size_t outer = 1; outer <= cfg.outer_iters; ++outer) {
      const KernelMatrix combined = combine(bank, mu);
      const AffinityGraph graph = graph_from_kernel(combined, edges);
      report.phase_trace.push_back({outer, Phase::graph_refresh, objective()});
      for (std::size_t s = 0; s < cfg.inner_iters; ++s) {
        f = kernel_step(combined, f.h, f.w, graph, alpha);
        report.phase_trace.push_back({outer, Phase::factor_update, objective()});
      }
      mu = update_mu_kernel(per_kernel_energies(bank, f.h, f.w, edges, alpha), beta);
      const double value = objective();
      report.phase_trace.push_back({outer, Phase::weight_update, value});

      const double previous = report.objective_trace.back();
      report.objective_trace.push_back(value);
      report.iterations = outer;
      if (relative_change(previous, value) < cfg.base.tol) {
        report.termination = Termination::converged;
        break;
      }
    }
    std::optional<NonNegMatrix> linear_h;
    if (cfg.kernels.front().kind == KernelKind::linear) {
      linear_h.emplace(x.matrix() * f.h);
    }
    return MultiKernelResult{NonNegMatrix(std::move(f.h)), NonNegMatrix(std::move(f.w)),
                             std::move(mu), std::move(report), std::move(linear_h)};
  };

  const detail::Stopwatch clock;
  auto best = detail::best_of_restarts<MultiKernelResult>(
      cfg.base.restarts, cfg.base.seed, run,
      [](const MultiKernelResult& r) { return r.report.final_objective(); });
  if (cfg.base.m > x.cols()) {
    best.report.warnings.push_back("rank m exceeds the number of samples");
  }
  best.report.wall_seconds = clock.seconds();
  return best;
}

}  // namespace mrnmf
