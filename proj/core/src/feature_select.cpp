#include "mrnmf/feature_select.hpp"

#include "mrnmf/errors.hpp"
#include "updates.hpp"

#include <cmath>

namespace mrnmf {

void FeatureSelectConfig::validate() const {
  base.validate();
  graph.validate();
  if (inner_iters < 1) throw ParameterError("inner_iters must be >= 1");
  if (!(u_floor >= 0.0) || !std::isfinite(u_floor)) {
    throw ParameterError("u_floor must be finite and >= 0");
  }
}

namespace {

void check_weights(const SimplexWeights& u, const Matrix& x, const char* who) {
  if (u.size() != static_cast<std::size_t>(x.rows())) {
    throw DimensionError(std::string(who) + ": " + std::to_string(u.size()) +
                         " feature weights for " + std::to_string(x.rows()) + " features");
  }
}

}  // namespace

double weighted_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                          const SimplexWeights& u, const AffinityGraph& graph_u, double alpha) {
  detail::check_factor_shapes(x, h, w, "weighted_objective");
  detail::check_graph_size(graph_u, w, "weighted_objective");
  check_weights(u, x, "weighted_objective");
  const Matrix residual = u.values().asDiagonal() * (x - h * w);
  return residual.squaredNorm() +
         alpha * regularizer_value(graph_u, w);
}

Factors weighted_step(const Matrix& x, const Matrix& h, const Matrix& w, const SimplexWeights& u,
                      const AffinityGraph& graph_u, double alpha) {
  detail::check_factor_shapes(x, h, w, "weighted_step");
  detail::check_graph_size(graph_u, w, "weighted_step");
  check_weights(u, x, "weighted_step");
  Factors next{h, w};
  // diag(u^2) scales numerator and denominator rows of the H rule alike.
  detail::update_h(next.h, x, next.w);
  const Vector u2 = u.values().cwiseProduct(u.values());
  const Matrix weighted_x = u2.asDiagonal() * x;
  const Matrix weighted_h = u2.asDiagonal() * next.h;
  detail::update_w(next.w, next.h.transpose() * weighted_x, next.h.transpose() * weighted_h,
                   &graph_u, alpha);
  return next;
}

SimplexWeights update_u(const Matrix& x, const Matrix& h, const Matrix& w, double u_floor) {
  detail::check_factor_shapes(x, h, w, "update_u");
  const auto d = static_cast<std::size_t>(x.rows());
  if (!(u_floor >= 0.0) || u_floor * static_cast<double>(d) >= 1.0) {
    throw ParameterError("u_floor must be in [0, 1/d)");
  }
  const Vector energy = (x - h * w).rowwise().squaredNorm();
  if (energy.sum() == 0.0) return SimplexWeights::uniform(d);

  SimplexWeights u = solve(DiagQP{energy, Vector::Zero(energy.size())});
  if (u_floor == 0.0) return u;
  Vector clamped = u.values().cwiseMax(u_floor);
  clamped /= clamped.sum();
  return SimplexWeights(std::move(clamped));
}

FeatureSelectResult solve_feature_select(const NonNegMatrix& x, const FeatureSelectConfig& cfg) {
  cfg.validate();
  if (cfg.u_floor * static_cast<double>(x.rows()) >= 1.0) {
    throw ParameterError("u_floor must be < 1/d");
  }
  const Matrix& data = x.matrix();
  const double alpha = cfg.base.alpha;

  auto run = [&](std::uint64_t seed) {
    Factors f = init_factors(x.rows(), x.cols(), cfg.base.m, x.mean(), seed);
    SimplexWeights u = SimplexWeights::uniform(x.rows());
    AffinityGraph graph = build_weighted_graph(x, u, cfg.graph);
    auto objective = [&] { return weighted_objective(data, f.h, f.w, u, graph, alpha); };

    SolveReport report;
    report.seed = seed;
    report.objective_trace.push_back(objective());
    report.phase_trace.push_back({0, Phase::init, report.objective_trace.back()});
    for (std::size_t outer = 1; outer <= cfg.outer_iters; ++outer) {
      graph = build_weighted_graph(x, u, cfg.graph);
      report.phase_trace.push_back({outer, Phase::graph_refresh, objective()});
      for (std::size_t s = 0; s < cfg.inner_iters; ++s) {
        f = weighted_step(data, f.h, f.w, u, graph, alpha);
        report.phase_trace.push_back({outer, Phase::factor_update, objective()});
      }
      u = update_u(data, f.h, f.w, cfg.u_floor);
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
    return FeatureSelectResult{
        {NonNegMatrix(std::move(f.h)), NonNegMatrix(std::move(f.w)), std::move(report)},
        std::move(u)};
  };

  const detail::Stopwatch clock;
  auto best = detail::best_of_restarts<FeatureSelectResult>(
      cfg.base.restarts, cfg.base.seed, run,
      [](const FeatureSelectResult& r) { return r.factorization.report.final_objective(); });
  best.factorization.report.wall_seconds = clock.seconds();
  return best;
}

}  // namespace mrnmf
