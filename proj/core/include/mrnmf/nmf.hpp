#pragma once

#include "mrnmf/graph.hpp"
#include "mrnmf/matrix.hpp"
#include "mrnmf/report.hpp"

#include <cstddef>
#include <cstdint>

namespace mrnmf {

/// Settings shared by every solver.
struct NmfConfig {
  std::size_t m = 2;          // inner rank
  double alpha = 0.0;         // graph tradeoff
  std::size_t max_iter = 500;
  double tol = 1e-6;          // relative objective change threshold, in (0, 1]
  std::uint64_t seed = 0;
  std::size_t restarts = 1;

  void validate() const;

  friend bool operator==(const NmfConfig&, const NmfConfig&) = default;
};

/// A working factor pair (unchecked; iterates stay nonnegative by
/// construction of the multiplicative rules).
struct Factors {
  Matrix h;
  Matrix w;
};

struct Factorization {
  NonNegMatrix h;
  NonNegMatrix w;
  SolveReport report;
};

/// Random strictly positive factors h (rows x m) and w (m x cols). Entries are
/// uniform on (0, 1] times sqrt(target_mean / m); deterministic in `seed`.
Factors init_factors(std::size_t rows, std::size_t cols, std::size_t m,
                     double target_mean, std::uint64_t seed);

double nmf_objective(const Matrix& x, const Matrix& h, const Matrix& w);

/// ||X - HW||^2 + alpha * (1/2) sum_ij A_ij ||w_i - w_j||^2.
double gnmf_objective(const Matrix& x, const Matrix& h, const Matrix& w,
                      const AffinityGraph& graph, double alpha);

/// One multiplicative sweep:
///   H' = H .* (X W^T) ./ (H W W^T + eps)
///   W' = W .* (H'^T X) ./ (H'^T H' W + eps)
Factors nmf_step(const Matrix& x, const Matrix& h, const Matrix& w);

/// Graph-regularized sweep. The H rule is the plain one; the W rule splits the
/// Laplacian term into its nonnegative parts:
///   W' = W .* (H'^T X + alpha W A) ./ (H'^T H' W + alpha W D + eps)
Factors gnmf_step(const Matrix& x, const Matrix& h, const Matrix& w,
                  const AffinityGraph& graph, double alpha);

/// Iterates nmf_step until the relative objective change drops below
/// cfg.tol or cfg.max_iter steps; keeps the best of cfg.restarts seeded runs
/// (seeds cfg.seed, cfg.seed + 1, ...; ties go to the lower seed).
Factorization solve_nmf(const NonNegMatrix& x, const NmfConfig& cfg);

Factorization solve_gnmf(const NonNegMatrix& x, const AffinityGraph& graph,
                         const NmfConfig& cfg);

/// Rescales H columns to unit Euclidean norm and W rows inversely, leaving
/// HW unchanged. Zero columns are left alone.
Factors normalize_basis(const Matrix& h, const Matrix& w);

}  // namespace mrnmf
