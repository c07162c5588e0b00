#include "mrnmf/errors.hpp"
#include "mrnmf/feature_select.hpp"
#include "mrnmf/synthetic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace mrnmf {
namespace {

GraphSpec gaussian(std::size_t k, double sigma) {
  GraphSpec s;
  s.k = k;
  s.bandwidth = sigma;
  return s;
}

struct Instance {
  Matrix x;
  Matrix h;
  Matrix w;
  AffinityGraph g;
};

Instance instance(Eigen::Index d, Eigen::Index n, std::uint64_t seed) {
  const Matrix x = oracle::random_matrix(d, n, seed);
  return {x, oracle::random_matrix(d, 2, seed + 1), oracle::random_matrix(2, n, seed + 2),
          build_knn_graph(NonNegMatrix(x), gaussian(3, 0.5))};
}

TEST(WeightedObjective, ZeroResidualLeavesGraphTerm) {
  const Instance in = instance(4, 9, 1);
  const Matrix x = in.h * in.w;
  const SimplexWeights u{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(weighted_objective(x, in.h, in.w, u, in.g, 2.0),
              2.0 * regularizer_value(in.g, in.w), 1e-14);
}

TEST(WeightedObjective, OneHotSelectsFeatureRow) {
  const Instance in = instance(4, 9, 2);
  const Matrix residual = in.x - in.h * in.w;
  EXPECT_NEAR(weighted_objective(in.x, in.h, in.w, SimplexWeights::one_hot(4, 2), in.g, 0.5),
              residual.row(2).squaredNorm() + 0.5 * regularizer_value(in.g, in.w), 1e-13);
}

TEST(WeightedObjective, MatchesDoubleLoop) {
  const Instance in = instance(5, 8, 3);
  const SimplexWeights u(oracle::random_vector(5, 4, 0.0, 1.0).normalized().cwiseAbs2());
  const double expected = oracle::weighted_reconstruction(in.x, in.h, in.w, u.values()) +
                          1.3 * oracle::pairwise_regularizer(in.g.affinity(), in.w);
  EXPECT_LE(oracle::relative_gap(weighted_objective(in.x, in.h, in.w, u, in.g, 1.3), expected),
            1e-12);
}

TEST(WeightedStep, UniformWeightsMatchScaledGnmf) {
  // With u = 1/d the data term carries 1/d^2, equivalent to alpha * d^2.
  const Instance in = instance(4, 9, 5);
  const double alpha = 0.7;
  const Factors weighted = weighted_step(in.x, in.h, in.w, SimplexWeights::uniform(4), in.g, alpha);
  const Factors plain = gnmf_step(in.x, in.h, in.w, in.g, alpha * 16.0);
  EXPECT_EQ(weighted.h, plain.h);
  EXPECT_LE(((weighted.w - plain.w).cwiseAbs().array() / plain.w.array()).maxCoeff(), 1e-10);
  const Factors no_graph = weighted_step(in.x, in.h, in.w, SimplexWeights::uniform(4), in.g, 0.0);
  const Factors nmf = nmf_step(in.x, in.h, in.w);
  EXPECT_LE(((no_graph.w - nmf.w).cwiseAbs().array() / nmf.w.array()).maxCoeff(), 1e-10);
}

TEST(WeightedStep, OneHotUsesOnlyThatFeature) {
  const Instance in = instance(4, 9, 6);
  const Factors full = weighted_step(in.x, in.h, in.w, SimplexWeights::one_hot(4, 1), in.g, 0.8);
  // Hand restriction: the W rule sees the single row 1 of X and of H'.
  const Factors h_only = nmf_step(in.x, in.h, in.w);
  const Matrix x1 = in.x.row(1);
  const Matrix h1 = h_only.h.row(1);
  Matrix w = in.w;
  const Matrix num = h1.transpose() * x1 + 0.8 * in.w * in.g.affinity();
  const Matrix den = h1.transpose() * h1 * in.w + 0.8 * in.w * in.g.degree().asDiagonal();
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) *= num(i, j) / (den(i, j) + 1e-12);
  EXPECT_LE((full.w - w).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_EQ(full.h, h_only.h);
}

TEST(WeightedStep, HUpdateIgnoresWeights) {
  const Instance in = instance(6, 9, 7);
  const SimplexWeights u(oracle::random_vector(6, 8, 0.1, 1.0) /
                         oracle::random_vector(6, 8, 0.1, 1.0).sum());
  EXPECT_LE((weighted_step(in.x, in.h, in.w, u, in.g, 1.0).h - nmf_step(in.x, in.h, in.w).h)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(WeightedStep, MonotoneOverManySteps) {
  const Instance in = instance(6, 12, 9);
  const SimplexWeights u(oracle::random_vector(6, 10, 0.1, 1.0) /
                         oracle::random_vector(6, 10, 0.1, 1.0).sum());
  Factors f{in.h, in.w};
  double previous = weighted_objective(in.x, f.h, f.w, u, in.g, 1.0);
  for (int t = 0; t < 200; ++t) {
    f = weighted_step(in.x, f.h, f.w, u, in.g, 1.0);
    const double value = weighted_objective(in.x, f.h, f.w, u, in.g, 1.0);
    ASSERT_LE(value, previous * (1.0 + 1e-8)) << "step " << t;
    previous = value;
  }
}

TEST(UpdateU, EqualRowEnergiesGiveUniform) {
  Matrix x = Matrix::Zero(3, 2);
  x << 1, 0, 0, 1, 1, 0;
  const SimplexWeights u = update_u(x, Matrix::Zero(3, 1), Matrix::Zero(1, 2));
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(u[c], 1.0 / 3.0, 1e-15);
}

TEST(UpdateU, InverseEnergyWeights) {
  Matrix x(2, 1);
  x << 1, std::sqrt(3.0);
  const SimplexWeights u = update_u(x, Matrix::Zero(2, 1), Matrix::Zero(1, 1));
  EXPECT_NEAR(u[0], 0.75, 1e-15);
  EXPECT_NEAR(u[1], 0.25, 1e-15);
  Vector q(2);
  q << 1.0, 3.0;
  const SimplexWeights lattice = grid_oracle(DiagQP{q, Vector::Zero(2)}, 1e-2);
  EXPECT_NEAR(lattice[0], 0.75, 1e-12);
}

TEST(UpdateU, ZeroResidualRowTakesAllMass) {
  const Instance in = instance(4, 6, 11);
  Matrix x = in.x;
  x.row(1) = (in.h * in.w).row(1);
  x.row(3) = (in.h * in.w).row(3);
  const SimplexWeights u = update_u(x, in.h, in.w);
  EXPECT_EQ(u[1], 1.0);
  EXPECT_EQ(u[3], 0.0);
}

TEST(UpdateU, ExactFitGivesUniform) {
  const Instance in = instance(3, 5, 12);
  const SimplexWeights u = update_u(in.h * in.w, in.h, in.w);
  EXPECT_EQ(u[0], 1.0 / 3.0);
}

TEST(UpdateU, InteriorKktHolds) {
  const Instance in = instance(6, 10, 13);
  const SimplexWeights u = update_u(in.x, in.h, in.w);
  const Vector q = (in.x - in.h * in.w).rowwise().squaredNorm();
  const double ref = 2 * q(0) * u[0];
  for (Eigen::Index c = 1; c < 6; ++c) {
    EXPECT_LE(std::abs(2 * q(c) * u[static_cast<std::size_t>(c)] - ref) / ref, 1e-8);
  }
}

TEST(UpdateU, FloorClampsAndRenormalizes) {
  const Instance in = instance(4, 6, 14);
  Matrix x = in.x;
  x.row(0) = (in.h * in.w).row(0);
  const SimplexWeights u = update_u(x, in.h, in.w, 0.05);
  EXPECT_GE(u.values().minCoeff(), 0.05 / (1.0 + 3 * 0.05) - 1e-15);
  EXPECT_NEAR(u.values().sum(), 1.0, 1e-12);
  EXPECT_THROW(update_u(x, in.h, in.w, 0.25), ParameterError);
}

TEST(SolveFeatureSelect, SingleFeatureReproducesGnmf) {
  const NonNegMatrix x(oracle::random_matrix(1, 14, 15));
  FeatureSelectConfig cfg;
  cfg.base.m = 1;
  cfg.base.alpha = 0.5;
  cfg.base.tol = 1e-15;
  cfg.base.seed = 3;
  cfg.graph = gaussian(3, 0.4);
  cfg.outer_iters = 5;
  cfg.inner_iters = 4;
  const FeatureSelectResult r = solve_feature_select(x, cfg);
  EXPECT_EQ(r.u[0], 1.0);

  NmfConfig base = cfg.base;
  base.max_iter = cfg.outer_iters * cfg.inner_iters;
  const Factorization g = solve_gnmf(x, build_knn_graph(x, cfg.graph), base);
  EXPECT_EQ(r.factorization.h, g.h);
  EXPECT_EQ(r.factorization.w, g.w);
  for (std::size_t t = 0; t <= cfg.outer_iters; ++t) {
    EXPECT_EQ(r.factorization.report.objective_trace[t],
              g.report.objective_trace[t * cfg.inner_iters]);
  }
}

TEST(SolveFeatureSelect, InformativeFeaturesWin) {
  const SyntheticData data = make_noisy_features(5, 5, 40, 21);
  FeatureSelectConfig cfg;
  cfg.base.alpha = 1.0;
  cfg.graph = gaussian(5, 1.0);
  const FeatureSelectResult r = solve_feature_select(data.x, cfg);
  const Vector& u = r.u.values();
  EXPECT_GT(u.head(5).sum(), u.tail(5).sum());
}

TEST(SolveFeatureSelect, ZeroOuterIterationsKeepsInitialState) {
  const NonNegMatrix x(oracle::random_matrix(4, 10, 16));
  FeatureSelectConfig cfg;
  cfg.outer_iters = 0;
  cfg.base.seed = 8;
  const FeatureSelectResult r = solve_feature_select(x, cfg);
  const Factors init = init_factors(4, 10, cfg.base.m, x.mean(), 8);
  EXPECT_EQ(r.factorization.h.matrix(), init.h);
  EXPECT_EQ(r.factorization.w.matrix(), init.w);
  EXPECT_EQ(r.u.values(), SimplexWeights::uniform(4).values());
  EXPECT_EQ(r.factorization.report.iterations, 0u);
  EXPECT_EQ(r.factorization.report.objective_trace.size(), 1u);
}

TEST(SolveFeatureSelect, PhasesDescendBetweenRefreshes) {
  const SyntheticData data = make_noisy_features(5, 5, 40, 22);
  FeatureSelectConfig cfg;
  cfg.base.alpha = 1.0;
  cfg.base.tol = 1e-15;
  cfg.graph = gaussian(5, 1.0);
  const FeatureSelectResult r = solve_feature_select(data.x, cfg);
  const auto& phases = r.factorization.report.phase_trace;
  for (std::size_t t = 1; t < phases.size(); ++t) {
    if (phases[t].phase == Phase::graph_refresh) continue;
    EXPECT_LE(phases[t].objective, phases[t - 1].objective * (1.0 + 1e-8)) << "sample " << t;
  }
}

TEST(FeatureSelectConfigType, RejectsLargeFloor) {
  FeatureSelectConfig cfg;
  cfg.u_floor = 0.5;
  EXPECT_THROW(solve_feature_select(NonNegMatrix(oracle::random_matrix(3, 8, 1)), cfg),
               ParameterError);
}

}  // namespace
}  // namespace mrnmf
