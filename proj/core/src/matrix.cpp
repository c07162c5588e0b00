#include "mrnmf/matrix.hpp"

#include "mrnmf/errors.hpp"

#include <cmath>
#include <string>

namespace mrnmf {

void check_nonnegative(const Matrix& m, const char* name) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DomainError(std::string(name) + ": empty matrix");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError(std::string(name) + ": entry at row " + std::to_string(i + 1) +
                          ", col " + std::to_string(j + 1) +
                          (std::isfinite(v) ? " is negative" : " is not finite") +
                          " (" + std::to_string(v) + ")");
      }
    }
  }
}

NonNegMatrix::NonNegMatrix(Matrix values) : values_(std::move(values)) {
  check_nonnegative(values_, "matrix");
}

NonNegMatrix NonNegMatrix::zeros(std::size_t rows, std::size_t cols) {
  return NonNegMatrix(Matrix::Zero(static_cast<Eigen::Index>(rows),
                                   static_cast<Eigen::Index>(cols)));
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

double frobenius_sq(const Matrix& a) { return a.squaredNorm(); }

double frobenius_sq_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frobenius_sq_diff");
  return (a - b).squaredNorm();
}

double reconstruction_error(const Matrix& x, const Matrix& h, const Matrix& w) {
  if (h.cols() != w.rows() || x.rows() != h.rows() || x.cols() != w.cols()) {
    throw DimensionError("reconstruction_error: X is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", H is " + std::to_string(h.rows()) +
                         "x" + std::to_string(h.cols()) + ", W is " +
                         std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  const Matrix residual = x - h * w;
  return residual.squaredNorm();
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hadamard");
  return a.cwiseProduct(b);
}

Matrix floored_quotient(const Matrix& num, const Matrix& den, double eps) {
  require_same_shape(num, den, "floored_quotient");
  return num.array() / (den.array() + eps);
}

void multiplicative_update(Matrix& p, const Matrix& num, const Matrix& den, double eps) {
  require_same_shape(p, num, "multiplicative_update");
  require_same_shape(p, den, "multiplicative_update");
  p.array() *= num.array() / (den.array() + eps);
}

}  // namespace mrnmf
