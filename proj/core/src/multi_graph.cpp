#include "mrnmf/multi_graph.hpp"

#include "mrnmf/errors.hpp"
#include "updates.hpp"

#include <cmath>
#include <optional>

namespace mrnmf {

void MultiGraphConfig::validate() const {
  base.validate();
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  if (graphs.empty()) throw ParameterError("graphs: candidate pool is empty");
  if (inner_iters < 1) throw ParameterError("inner_iters must be >= 1");
  for (const auto& g : graphs) g.validate();
}

Vector graph_energies(std::span<const AffinityGraph> graphs, const Matrix& w, double alpha) {
  Vector e(static_cast<Eigen::Index>(graphs.size()));
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    e(static_cast<Eigen::Index>(k)) = alpha * regularizer_value(graphs[k], w);
  }
  return e;
}

SimplexWeights update_mu(const Vector& energies, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  return solve(DiagQP{Vector::Constant(energies.size(), beta), energies});
}

double multi_graph_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                             std::span<const AffinityGraph> graphs, const SimplexWeights& mu,
                             double alpha, double beta) {
  if (graphs.size() != mu.size()) throw DimensionError("one weight per candidate graph");
  return nmf_objective(x, h, w) + mu.values().dot(graph_energies(graphs, w, alpha)) +
         beta * mu.values().squaredNorm();
}

MultiGraphResult solve_multi_graph(const NonNegMatrix& x, const MultiGraphConfig& cfg) {
  cfg.validate();
  std::vector<std::optional<AffinityGraph>> built(cfg.graphs.size());
  parallel_for(cfg.graphs.size(),
               [&](std::size_t k) { built[k].emplace(build_knn_graph(x, cfg.graphs[k])); });
  std::vector<AffinityGraph> graphs;
  graphs.reserve(built.size());
  for (auto& g : built) graphs.push_back(std::move(*g));
  return solve_multi_graph(x, graphs, cfg);
}

MultiGraphResult solve_multi_graph(const NonNegMatrix& x, std::span<const AffinityGraph> graphs,
                                   const MultiGraphConfig& cfg) {
  cfg.base.validate();
  if (!(cfg.beta > 0.0)) throw ParameterError("beta must be finite and > 0");
  if (graphs.empty()) throw ParameterError("graphs: candidate pool is empty");
  if (cfg.inner_iters < 1) throw ParameterError("inner_iters must be >= 1");
  for (const auto& g : graphs) detail::check_graph_size(g, x.matrix(), "solve_multi_graph");

  const Matrix& data = x.matrix();
  const double alpha = cfg.base.alpha;
  const double beta = cfg.beta;

  auto run = [&](std::uint64_t seed) {
    Factors f = init_factors(x.rows(), x.cols(), cfg.base.m, x.mean(), seed);
    SimplexWeights mu = SimplexWeights::uniform(graphs.size());
    auto objective = [&] {
      return multi_graph_objective(data, f.h, f.w, graphs, mu, alpha, beta);
    };

    SolveReport report;
    report.seed = seed;
    report.objective_trace.push_back(objective());
    report.phase_trace.push_back({0, Phase::init, report.objective_trace.back()});
    for (std::size_t outer = 1; outer <= cfg.outer_iters; ++outer) {
      const AffinityGraph combined = combine_graphs(graphs, mu);
      for (std::size_t s = 0; s < cfg.inner_iters; ++s) {
        f = gnmf_step(data, f.h, f.w, combined, alpha);
        report.phase_trace.push_back({outer, Phase::factor_update, objective()});
      }
      mu = update_mu(graph_energies(graphs, f.w, alpha), beta);
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
    return MultiGraphResult{
        {NonNegMatrix(std::move(f.h)), NonNegMatrix(std::move(f.w)), std::move(report)},
        std::move(mu)};
  };

  const detail::Stopwatch clock;
  auto best = detail::best_of_restarts<MultiGraphResult>(
      cfg.base.restarts, cfg.base.seed, run,
      [](const MultiGraphResult& r) { return r.factorization.report.final_objective(); });
  best.factorization.report.wall_seconds = clock.seconds();
  return best;
}

}  // namespace mrnmf
