#pragma once

#include "mrnmf/graph.hpp"
#include "mrnmf/nmf.hpp"
#include "mrnmf/simplex_qp.hpp"

#include <span>
#include <vector>

namespace mrnmf {

/// Learns a convex combination of candidate graphs jointly with H and W:
///
///   ||X - HW||^2 + alpha (1/2) sum_ij sum_k mu_k A^k_ij ||w_i - w_j||^2
///     + beta ||mu||^2,   mu on the simplex.
struct MultiGraphConfig {
  NmfConfig base;
  double beta = 1.0;
  std::vector<GraphSpec> graphs;
  std::size_t outer_iters = 30;
  std::size_t inner_iters = 10;

  void validate() const;

  friend bool operator==(const MultiGraphConfig&, const MultiGraphConfig&) = default;
};

struct MultiGraphResult {
  Factorization factorization;
  SimplexWeights mu;
};

/// e_k = alpha * regularizer_value(A^k, w).
Vector graph_energies(std::span<const AffinityGraph> graphs, const Matrix& w,
                      double alpha);

/// Exact mu step: the simplex QP with q = beta * 1 and linear term `energies`.
SimplexWeights update_mu(const Vector& energies, double beta);

double multi_graph_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                             std::span<const AffinityGraph> graphs,
                             const SimplexWeights& mu, double alpha, double beta);

/// Builds the candidate pool from cfg.graphs, then alternates inner GNMF
/// sweeps on the combined graph with exact mu updates.
MultiGraphResult solve_multi_graph(const NonNegMatrix& x, const MultiGraphConfig& cfg);

/// Same, over an already built pool (cfg.graphs is ignored).
MultiGraphResult solve_multi_graph(const NonNegMatrix& x,
                                   std::span<const AffinityGraph> graphs,
                                   const MultiGraphConfig& cfg);

}  // namespace mrnmf
