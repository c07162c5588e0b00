#pragma once

#include "mrnmf/graph.hpp"
#include "mrnmf/nmf.hpp"
#include "mrnmf/simplex_qp.hpp"

namespace mrnmf {

/// Feature-weighted graph NMF: each feature row c carries a weight u_c on the
/// simplex. The objective is
///
///   ||diag(u)(X - HW)||^2 + alpha (1/2) sum_ij A^u_ij ||w_i - w_j||^2
///
/// where A^u is the k-NN graph built on diag(u) X.
struct FeatureSelectConfig {
  NmfConfig base;
  GraphSpec graph;
  std::size_t outer_iters = 20;
  std::size_t inner_iters = 10;
  double u_floor = 0.0;  // optional lower bound per weight; must be < 1/d

  void validate() const;

  friend bool operator==(const FeatureSelectConfig&, const FeatureSelectConfig&) = default;
};

struct FeatureSelectResult {
  Factorization factorization;
  SimplexWeights u;
};

double weighted_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                          const SimplexWeights& u, const AffinityGraph& graph_u,
                          double alpha);

/// With D_u = diag(u^2):
///   H' = H .* (X W^T) ./ (H W W^T + eps)      (row weights cancel)
///   W' = W .* (H'^T D_u X + alpha W A) ./ (H'^T D_u H' W + alpha W D + eps)
Factors weighted_step(const Matrix& x, const Matrix& h, const Matrix& w,
                      const SimplexWeights& u, const AffinityGraph& graph_u,
                      double alpha);

/// Exact u step: q_c = sum_j (X - HW)^2_cj, no linear term, so u_c ~ 1/q_c on
/// the interior. An exactly zero residual gives uniform weights. A positive
/// floor clamps then renormalizes.
SimplexWeights update_u(const Matrix& x, const Matrix& h, const Matrix& w,
                        double u_floor = 0.0);

/// Outer loop: rebuild A^u (neighbours included), run inner weighted steps,
/// update u. The phase trace marks graph refreshes; the objective is only
/// monotone between them.
FeatureSelectResult solve_feature_select(const NonNegMatrix& x,
                                         const FeatureSelectConfig& cfg);

}  // namespace mrnmf
