#pragma once

// Multiplicative update kernels and restart plumbing shared by the solvers.

#include "mrnmf/errors.hpp"
#include "mrnmf/graph.hpp"
#include "mrnmf/matrix.hpp"
#include "mrnmf/parallel.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mrnmf::detail {

/// H <- H .* (X W^T) ./ (H (W W^T) + eps)
inline void update_h(Matrix& h, const Matrix& x, const Matrix& w) {
  const Matrix num = x * w.transpose();
  const Matrix wwt = w * w.transpose();
  const Matrix den = h * wwt;
  multiplicative_update(h, num, den);
}

/// W <- W .* (htx + alpha W A) ./ (hth W + alpha W D + eps)
///
/// htx / hth are the data-side Gram pieces: H^T X and H^T H for plain NMF,
/// H^T D_u X and H^T D_u H for feature weighting, G^T K and G^T K G for the
/// kernel model.
inline void update_w(Matrix& w, const Matrix& htx, const Matrix& hth,
                     const AffinityGraph* graph, double alpha) {
  Matrix num = htx;
  Matrix den = hth * w;
  if (graph != nullptr && alpha != 0.0) {
    num += alpha * (w * graph->affinity());
    den += alpha * (w * graph->degree().asDiagonal());
  }
  multiplicative_update(w, num, den);
}

inline void check_factor_shapes(const Matrix& x, const Matrix& h, const Matrix& w,
                                const char* who) {
  if (h.rows() != x.rows() || w.cols() != x.cols() || h.cols() != w.rows()) {
    throw DimensionError(std::string(who) + ": X is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", H is " + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()) + ", W is " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()));
  }
}

inline void check_graph_size(const AffinityGraph& graph, const Matrix& w, const char* who) {
  if (graph.n() != static_cast<std::size_t>(w.cols())) {
    throw DimensionError(std::string(who) + ": graph has " + std::to_string(graph.n()) +
                         " nodes, W has " + std::to_string(w.cols()) + " columns");
  }
}

/// Runs `run(seed + r)` for every restart r and keeps the result with the
/// smallest final objective (lowest seed on ties).
template <class Result, class Run, class Score>
Result best_of_restarts(std::size_t restarts, std::uint64_t seed, Run&& run, Score&& score) {
  std::vector<std::optional<Result>> results(restarts);
  parallel_for(restarts, [&](std::size_t r) { results[r].emplace(run(seed + r)); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (score(*results[r]) < score(*results[best])) best = r;
  }
  return std::move(*results[best]);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace mrnmf::detail
