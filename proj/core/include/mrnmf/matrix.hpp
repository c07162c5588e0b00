#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace mrnmf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Floor added to every multiplicative-update denominator.
inline constexpr double kDenominatorFloor = 1e-12;

/// Dense, column-major, entrywise nonnegative and finite matrix with at least
/// one row and one column. Samples are stored as columns (X is d x n).
///
/// The invariant is checked once at construction; the held Eigen matrix is
/// only reachable through a const reference.
class NonNegMatrix {
 public:
  /// Validates `values`; throws DomainError naming the first offending cell
  /// (1-based row/col) or reporting an empty shape.
  explicit NonNegMatrix(Matrix values);

  static NonNegMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const Matrix& matrix() const { return values_; }
  double mean() const { return values_.mean(); }

  friend bool operator==(const NonNegMatrix& a, const NonNegMatrix& b) {
    return a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  Matrix values_;
};

/// Throws DomainError unless every entry of `m` is finite and >= 0.
void check_nonnegative(const Matrix& m, const char* name);

/// Sum of squared entries.
double frobenius_sq(const Matrix& a);

/// ||a - b||_F^2. Throws DimensionError on shape mismatch.
double frobenius_sq_diff(const Matrix& a, const Matrix& b);

/// ||x - h w||_F^2 with shape checks.
double reconstruction_error(const Matrix& x, const Matrix& h, const Matrix& w);

/// Entrywise a * b.
Matrix hadamard(const Matrix& a, const Matrix& b);

/// Entrywise num / (den + eps). Nonnegative for nonnegative inputs.
Matrix floored_quotient(const Matrix& num, const Matrix& den,
                        double eps = kDenominatorFloor);

/// p <- p * num / (den + eps), in place.
void multiplicative_update(Matrix& p, const Matrix& num, const Matrix& den,
                           double eps = kDenominatorFloor);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

}  // namespace mrnmf
