#pragma once

#include "mrnmf/graph.hpp"
#include "mrnmf/kernel.hpp"
#include "mrnmf/nmf.hpp"
#include "mrnmf/simplex_qp.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mrnmf {

/// Factorization in a kernel-induced feature space with basis H = Phi(X) G.
/// The combined kernel K = sum_k mu_k K^k both drives the reconstruction
/// term and, masked to a fixed k-NN edge set, the graph affinity:
///
///   sum_k mu_k [tr K^k - 2 tr(K^k G W) + tr(K^k G W W^T G^T)]
///     + alpha (1/2) sum_ij A^mu_ij ||w_i - w_j||^2 + beta ||mu||^2.
struct MultiKernelConfig {
  NmfConfig base;
  double beta = 1.0;
  std::vector<KernelSpec> kernels;
  std::size_t k_neighbors = 5;
  std::size_t outer_iters = 30;
  std::size_t inner_iters = 10;

  void validate() const;

  friend bool operator==(const MultiKernelConfig&, const MultiKernelConfig&) = default;
};

struct MultiKernelResult {
  NonNegMatrix g;
  NonNegMatrix w;
  SimplexWeights mu;
  SolveReport report;
  /// X G, present when the first bank member is the linear kernel.
  std::optional<NonNegMatrix> linear_h;
};

/// tr(K) - 2 tr(K G W) + tr(K G W W^T G^T) = ||Phi(X) - Phi(X) G W||^2.
double kernel_objective(const KernelMatrix& k, const Matrix& g, const Matrix& w);

/// e_k = kernel_objective(K^k) + alpha * regularizer_value(K^k on edges).
Vector per_kernel_energies(std::span<const KernelMatrix> kernels, const Matrix& g,
                           const Matrix& w, const EdgeSet& edges, double alpha);

/// Same diagonal QP as the multi-graph mu step.
SimplexWeights update_mu_kernel(const Vector& energies, double beta);

/// Full objective at mu, evaluated through the combined kernel.
double multi_kernel_objective(std::span<const KernelMatrix> kernels, const Matrix& g,
                              const Matrix& w, const EdgeSet& edges,
                              const SimplexWeights& mu, double alpha, double beta);

///   G' = G .* (K W^T) ./ (K G W W^T + eps)
///   W' = W .* (G'^T K + alpha W A) ./ (G'^T K G' W + alpha W D + eps)
Factors kernel_step(const KernelMatrix& k, const Matrix& g, const Matrix& w,
                    const AffinityGraph& graph_mu, double alpha);

/// Starting point used by solve_multi_kernel for a given seed: G (n x m) and
/// W (m x n) scaled so that G W is on the order of the identity.
Factors init_kernel_factors(std::size_t n, std::size_t m, std::uint64_t seed);

/// Builds the bank, fixes the edge set from euclidean k-NN on x, then
/// alternates (i) recombining K and A^mu, (ii) inner kernel steps,
/// (iii) the exact mu update.
MultiKernelResult solve_multi_kernel(const NonNegMatrix& x, const MultiKernelConfig& cfg);

}  // namespace mrnmf
