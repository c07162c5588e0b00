#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>

namespace mrnmf {

/// Nonnegative weights summing to one (graph weights, kernel weights, feature
/// weights).
class SimplexWeights {
 public:
  /// Throws DomainError unless every entry is finite, >= 0, and the sum is
  /// within 1e-10 of one. Throws ParameterError on an empty vector.
  explicit SimplexWeights(Eigen::VectorXd values);
  SimplexWeights(std::initializer_list<double> values);

  static SimplexWeights uniform(std::size_t size);
  static SimplexWeights one_hot(std::size_t size, std::size_t index);

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const {
    return values_(static_cast<Eigen::Index>(i));
  }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  Eigen::VectorXd values_;
};

inline constexpr double kSimplexTolerance = 1e-10;

/// Diagonal quadratic program over the probability simplex:
///
///   minimize   sum_c q_c v_c^2 + sum_c lin_c v_c
///   subject to sum_c v_c = 1,  v >= 0.
///
/// q must be entrywise >= 0; lin may have any sign.
struct DiagQP {
  Eigen::VectorXd q;
  Eigen::VectorXd lin;

  double objective(const Eigen::VectorXd& v) const;
};

/// Exact minimizer together with the multiplier of the sum constraint.
struct QpSolution {
  SimplexWeights weights;
  double multiplier;
};

/// Active-set solve. Candidates are ordered by their linear coefficient and
/// the multiplier is located on the piecewise-linear water-filling curve
///   sum_c max(0, (lambda - lin_c) / (2 q_c)) = 1
/// in closed form per segment. Coordinates with q_c = 0 take the remaining
/// mass when their linear cost undercuts lambda (lowest index wins ties).
///
/// Throws ParameterError for an empty problem, mismatched sizes, or a
/// negative / non-finite q entry.
QpSolution solve_qp(const DiagQP& problem);

inline SimplexWeights solve(const DiagQP& problem) {
  return solve_qp(problem).weights;
}

/// Brute-force lattice search over the simplex with the given step. Only
/// meant as an independent check of solve(). Requires size <= 4 and
/// step in (0, 1].
SimplexWeights grid_oracle(const DiagQP& problem, double step);

/// KKT residual of a candidate point: the largest violation of
///   2 q_c v_c + lin_c >= lambda (all c),  v_c (2 q_c v_c + lin_c - lambda) = 0,
/// with lambda the best multiplier for the support of v.
double kkt_residual(const DiagQP& problem, const Eigen::VectorXd& v);

/// Euclidean projection of y onto the probability simplex.
SimplexWeights project_to_simplex(const Eigen::VectorXd& y);

}  // namespace mrnmf
