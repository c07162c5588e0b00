#pragma once

#include "mrnmf/kernel.hpp"
#include "mrnmf/matrix.hpp"
#include "mrnmf/simplex_qp.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mrnmf {

enum class Distance { euclidean, cosine };
enum class AffinityKind { gaussian, binary, dot_product };

/// How to build one k-nearest-neighbour graph.
///
/// Gaussian affinity is exp(-d^2 / (2 sigma^2)) with either a fixed global
/// bandwidth or local scaling, where sigma^2 is replaced by sigma_i * sigma_j
/// and sigma_i is the distance from i to its k-th neighbour.
struct GraphSpec {
  std::size_t k = 5;
  Distance distance = Distance::euclidean;
  AffinityKind affinity = AffinityKind::gaussian;
  double bandwidth = 1.0;
  bool local_scaling = false;

  void validate() const;
  std::string label() const;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// Neighbour structure over n samples. Keeps the directed k-NN lists and the
/// symmetric closure {(i, j) : j in N_i or i in N_j} used as the edge set.
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t n);
  EdgeSet(std::size_t n, std::vector<std::vector<std::size_t>> neighbors);

  std::size_t n() const { return n_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
  bool contains(std::size_t i, std::size_t j) const { return mask_[i * n_ + j] != 0; }
  /// Symmetric closure as sorted (i, j) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t size() const;

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<char> mask_;
};

/// Symmetric nonnegative affinity matrix with zero diagonal, its degree
/// vector, and the edge set that supports it.
class AffinityGraph {
 public:
  /// Validates symmetry (exact), zero diagonal, nonnegativity, and that
  /// every positive entry lies on an edge.
  AffinityGraph(Matrix affinity, EdgeSet edges);

  static AffinityGraph empty(std::size_t n);

  std::size_t n() const { return edges_.n(); }
  const Matrix& affinity() const { return affinity_; }
  const Vector& degree() const { return degree_; }
  const EdgeSet& edges() const { return edges_; }
  /// L = D - A.
  Matrix laplacian() const;

 private:
  Matrix affinity_;
  Vector degree_;
  EdgeSet edges_;
};

/// n x n distances between the columns of x. Cosine distance is 1 - cos;
/// throws DomainError on a zero-norm column.
Matrix pairwise_distances(const Matrix& x, Distance distance);

/// k nearest neighbours of every sample (self excluded, ties broken by the
/// smaller index). Throws ParameterError unless 1 <= k < n.
EdgeSet knn_edges(const Matrix& distances, std::size_t k);

AffinityGraph build_knn_graph(const NonNegMatrix& x, const GraphSpec& spec);

/// build_knn_graph on diag(u) x: neighbours and affinities are both
/// recomputed in the weighted feature space.
AffinityGraph build_weighted_graph(const NonNegMatrix& x, const SimplexWeights& u,
                                   const GraphSpec& spec);

/// A_ij = K_ij on the edge set, zero elsewhere and on the diagonal.
AffinityGraph graph_from_kernel(const KernelMatrix& kernel, const EdgeSet& edges);

/// sum_k mu_k A^k over graphs on the same samples; edges are the union.
AffinityGraph combine_graphs(std::span<const AffinityGraph> graphs,
                             const SimplexWeights& mu);

/// (1/2) sum_ij A_ij ||w_i - w_j||^2 over the columns of w.
double regularizer_value(const AffinityGraph& graph, const Matrix& w);

}  // namespace mrnmf
