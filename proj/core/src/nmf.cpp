#include "mrnmf/nmf.hpp"

#include "mrnmf/errors.hpp"
#include "updates.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mrnmf {

void NmfConfig::validate() const {
  if (m < 1) throw ParameterError("m must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be finite and >= 0");
  if (!(tol > 0.0 && tol <= 1.0)) throw ParameterError("tol must be in (0, 1]");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
}

Factors init_factors(std::size_t rows, std::size_t cols, std::size_t m, double target_mean,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double scale =
      target_mean > 0.0 ? std::sqrt(target_mean / static_cast<double>(m)) : 1.0;
  // 1 - U[0, 1) lies in (0, 1], so no factor starts locked at zero.
  auto draw = [&] { return scale * (1.0 - uniform(rng)); };
  Factors f{Matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m)),
            Matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cols))};
  for (Eigen::Index j = 0; j < f.h.cols(); ++j)
    for (Eigen::Index i = 0; i < f.h.rows(); ++i) f.h(i, j) = draw();
  for (Eigen::Index j = 0; j < f.w.cols(); ++j)
    for (Eigen::Index i = 0; i < f.w.rows(); ++i) f.w(i, j) = draw();
  return f;
}

double nmf_objective(const Matrix& x, const Matrix& h, const Matrix& w) {
  return reconstruction_error(x, h, w);
}

double gnmf_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                      const AffinityGraph& graph, double alpha) {
  detail::check_graph_size(graph, w, "gnmf_objective");
  return nmf_objective(x, h, w) + alpha * regularizer_value(graph, w);
}

Factors nmf_step(const Matrix& x, const Matrix& h, const Matrix& w) {
  detail::check_factor_shapes(x, h, w, "nmf_step");
  Factors next{h, w};
  detail::update_h(next.h, x, next.w);
  detail::update_w(next.w, next.h.transpose() * x, next.h.transpose() * next.h, nullptr, 0.0);
  return next;
}

Factors gnmf_step(const Matrix& x, const Matrix& h, const Matrix& w, const AffinityGraph& graph,
                  double alpha) {
  detail::check_factor_shapes(x, h, w, "gnmf_step");
  detail::check_graph_size(graph, w, "gnmf_step");
  Factors next{h, w};
  detail::update_h(next.h, x, next.w);
  detail::update_w(next.w, next.h.transpose() * x, next.h.transpose() * next.h, &graph, alpha);
  return next;
}

namespace {

Factorization run_single(const NonNegMatrix& x, const AffinityGraph* graph,
                         const NmfConfig& cfg, std::uint64_t seed) {
  const Matrix& data = x.matrix();
  Factors f = init_factors(x.rows(), x.cols(), cfg.m, x.mean(), seed);
  auto objective = [&] {
    return graph ? gnmf_objective(data, f.h, f.w, *graph, cfg.alpha)
                 : nmf_objective(data, f.h, f.w);
  };

  SolveReport report;
  report.seed = seed;
  report.objective_trace.push_back(objective());
  while (report.iterations < cfg.max_iter) {
    f = graph ? gnmf_step(data, f.h, f.w, *graph, cfg.alpha) : nmf_step(data, f.h, f.w);
    ++report.iterations;
    const double previous = report.objective_trace.back();
    report.objective_trace.push_back(objective());
    if (relative_change(previous, report.objective_trace.back()) < cfg.tol) {
      report.termination = Termination::converged;
      break;
    }
  }
  return {NonNegMatrix(std::move(f.h)), NonNegMatrix(std::move(f.w)), std::move(report)};
}

Factorization solve(const NonNegMatrix& x, const AffinityGraph* graph, const NmfConfig& cfg) {
  cfg.validate();
  if (graph) detail::check_graph_size(*graph, x.matrix(), "solve_gnmf");
  const detail::Stopwatch clock;
  auto best = detail::best_of_restarts<Factorization>(
      cfg.restarts, cfg.seed,
      [&](std::uint64_t seed) { return run_single(x, graph, cfg, seed); },
      [](const Factorization& f) { return f.report.final_objective(); });
  if (cfg.m > std::min(x.rows(), x.cols())) {
    best.report.warnings.push_back("rank m = " + std::to_string(cfg.m) +
                                   " exceeds min(d, n) = " +
                                   std::to_string(std::min(x.rows(), x.cols())));
  }
  best.report.wall_seconds = clock.seconds();
  return best;
}

}  // namespace

Factorization solve_nmf(const NonNegMatrix& x, const NmfConfig& cfg) {
  return solve(x, nullptr, cfg);
}

Factorization solve_gnmf(const NonNegMatrix& x, const AffinityGraph& graph,
                         const NmfConfig& cfg) {
  return solve(x, &graph, cfg);
}

Factors normalize_basis(const Matrix& h, const Matrix& w) {
  if (h.cols() != w.rows()) throw DimensionError("normalize_basis: inner dimensions differ");
  Factors out{h, w};
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    const double norm = h.col(k).norm();
    if (norm > 0.0) {
      out.h.col(k) /= norm;
      out.w.row(k) *= norm;
    }
  }
  return out;
}

}  // namespace mrnmf
