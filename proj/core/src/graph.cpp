#include "mrnmf/graph.hpp"

#include "mrnmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mrnmf {

void GraphSpec::validate() const {
  if (k < 1) throw ParameterError("graph: k must be >= 1");
  if (affinity == AffinityKind::gaussian && !local_scaling &&
      (!(bandwidth > 0.0) || !std::isfinite(bandwidth))) {
    throw ParameterError("graph: gaussian bandwidth must be finite and > 0");
  }
}

std::string GraphSpec::label() const {
  std::ostringstream out;
  out << (distance == Distance::euclidean ? "euclidean" : "cosine") << " " << k << "-NN ";
  switch (affinity) {
    case AffinityKind::gaussian:
      if (local_scaling) {
        out << "gaussian(local)";
      } else {
        out << "gaussian(bandwidth=" << bandwidth << ")";
      }
      break;
    case AffinityKind::binary:
      out << "binary";
      break;
    case AffinityKind::dot_product:
      out << "dot_product";
      break;
  }
  return out.str();
}

EdgeSet::EdgeSet(std::size_t n) : EdgeSet(n, std::vector<std::vector<std::size_t>>(n)) {}

EdgeSet::EdgeSet(std::size_t n, std::vector<std::vector<std::size_t>> neighbors)
    : n_(n), neighbors_(std::move(neighbors)), mask_(n * n, 0) {
  if (neighbors_.size() != n_) throw DimensionError("edge set: one neighbour list per sample");
  for (std::size_t i = 0; i < n_; ++i) {
    for (const std::size_t j : neighbors_[i]) {
      if (j >= n_ || j == i) throw ParameterError("edge set: invalid neighbour index");
      mask_[i * n_ + j] = 1;
      mask_[j * n_ + i] = 1;
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> EdgeSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (contains(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t EdgeSet::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), char{1}));
}

AffinityGraph::AffinityGraph(Matrix affinity, EdgeSet edges)
    : affinity_(std::move(affinity)), edges_(std::move(edges)) {
  const auto n = static_cast<Eigen::Index>(edges_.n());
  if (affinity_.rows() != n || affinity_.cols() != n) {
    throw DimensionError("affinity matrix must be n x n with n = " + std::to_string(n));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (affinity_(i, i) != 0.0) throw DomainError("affinity diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = affinity_(i, j);
      if (!std::isfinite(a) || a < 0.0) throw DomainError("affinity entries must be finite and >= 0");
      if (a != affinity_(j, i)) throw DomainError("affinity matrix must be symmetric");
      if (a > 0.0 && !edges_.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        throw DomainError("positive affinity outside the edge set");
      }
    }
  }
  degree_ = affinity_.rowwise().sum();
}

AffinityGraph AffinityGraph::empty(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  return AffinityGraph(Matrix::Zero(size, size), EdgeSet(n));
}

Matrix AffinityGraph::laplacian() const {
  Matrix l = -affinity_;
  l.diagonal() += degree_;
  return l;
}

Matrix pairwise_distances(const Matrix& x, Distance distance) {
  const Eigen::Index n = x.cols();
  Matrix d = Matrix::Zero(n, n);
  if (distance == Distance::euclidean) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        d(i, j) = d(j, i) = (x.col(i) - x.col(j)).norm();
      }
    }
    return d;
  }
  const Vector norms = x.colwise().norm().transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norms(i) == 0.0) {
      throw DomainError("cosine distance undefined for zero-norm sample " + std::to_string(i));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double cosine = x.col(i).dot(x.col(j)) / (norms(i) * norms(j));
      d(i, j) = d(j, i) = std::max(0.0, 1.0 - cosine);
    }
  }
  return d;
}

EdgeSet knn_edges(const Matrix& distances, std::size_t k) {
  const auto n = static_cast<std::size_t>(distances.rows());
  if (k < 1 || k >= n) {
    throw ParameterError("graph: need 1 <= k < n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  std::vector<std::vector<std::size_t>> neighbors(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
    const auto row = static_cast<Eigen::Index>(i);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double da = distances(row, static_cast<Eigen::Index>(a));
                        const double db = distances(row, static_cast<Eigen::Index>(b));
                        return da < db || (da == db && a < b);
                      });
    neighbors[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    order.resize(n);
  }
  return EdgeSet(n, std::move(neighbors));
}

AffinityGraph build_knn_graph(const NonNegMatrix& x, const GraphSpec& spec) {
  spec.validate();
  const Matrix& data = x.matrix();
  const auto n = static_cast<std::size_t>(data.cols());
  if (n < 2) throw ParameterError("graph: need at least two samples");
  const Matrix dist = pairwise_distances(data, spec.distance);
  EdgeSet edges = knn_edges(dist, spec.k);

  Vector sigma;
  if (spec.affinity == AffinityKind::gaussian && spec.local_scaling) {
    sigma.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& nb = edges.neighbors(i);
      sigma(static_cast<Eigen::Index>(i)) =
          std::max(dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(nb.back())), 1e-12);
    }
  }

  const auto size = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = i + 1; j < size; ++j) {
      if (!edges.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
      double value = 0.0;
      switch (spec.affinity) {
        case AffinityKind::gaussian: {
          const double d2 = dist(i, j) * dist(i, j);
          const double scale2 = spec.local_scaling ? sigma(i) * sigma(j)
                                                   : spec.bandwidth * spec.bandwidth;
          value = std::exp(-d2 / (2.0 * scale2));
          break;
        }
        case AffinityKind::binary:
          value = 1.0;
          break;
        case AffinityKind::dot_product:
          value = data.col(i).dot(data.col(j));
          break;
      }
      a(i, j) = a(j, i) = value;
    }
  }
  return AffinityGraph(std::move(a), std::move(edges));
}

AffinityGraph build_weighted_graph(const NonNegMatrix& x, const SimplexWeights& u,
                                   const GraphSpec& spec) {
  if (u.size() != x.rows()) {
    throw DimensionError("feature weights have " + std::to_string(u.size()) +
                         " entries for " + std::to_string(x.rows()) + " features");
  }
  return build_knn_graph(NonNegMatrix(u.values().asDiagonal() * x.matrix()), spec);
}

AffinityGraph graph_from_kernel(const KernelMatrix& kernel, const EdgeSet& edges) {
  if (kernel.n() != edges.n()) {
    throw DimensionError("graph_from_kernel: kernel is " + std::to_string(kernel.n()) +
                         " x " + std::to_string(kernel.n()) + ", edge set covers " +
                         std::to_string(edges.n()) + " samples");
  }
  const auto n = static_cast<Eigen::Index>(edges.n());
  const Matrix& k = kernel.gram();
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (edges.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        // K is symmetric only to 1e-10; use one triangle for exact symmetry.
        a(i, j) = a(j, i) = k(i, j);
      }
    }
  }
  return AffinityGraph(std::move(a), edges);
}

AffinityGraph combine_graphs(std::span<const AffinityGraph> graphs, const SimplexWeights& mu) {
  if (graphs.empty()) throw DimensionError("combine_graphs: no graphs");
  if (graphs.size() != mu.size()) {
    throw DimensionError("combine_graphs: " + std::to_string(graphs.size()) + " graphs but " +
                         std::to_string(mu.size()) + " weights");
  }
  const std::size_t n = graphs.front().n();
  const auto size = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(size, size);
  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    if (graphs[k].n() != n) throw DimensionError("combine_graphs: graphs differ in size");
    a += mu[k] * graphs[k].affinity();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& nb = graphs[k].edges().neighbors(i);
      neighbors[i].insert(neighbors[i].end(), nb.begin(), nb.end());
    }
  }
  for (auto& nb : neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return AffinityGraph(std::move(a), EdgeSet(n, std::move(neighbors)));
}

double regularizer_value(const AffinityGraph& graph, const Matrix& w) {
  if (static_cast<std::size_t>(w.cols()) != graph.n()) {
    throw DimensionError("regularizer: W has " + std::to_string(w.cols()) +
                         " columns for a graph on " + std::to_string(graph.n()) + " samples");
  }
  const Matrix& a = graph.affinity();
  const Eigen::Index n = a.rows();
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double aij = a(i, j);
      if (aij != 0.0) total += aij * (w.col(i) - w.col(j)).squaredNorm();
    }
  }
  return total;
}

}  // namespace mrnmf
