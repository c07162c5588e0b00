#pragma once

#include "mrnmf/matrix.hpp"
#include "mrnmf/simplex_qp.hpp"

#include <span>
#include <string>

namespace mrnmf {

enum class KernelKind { linear, polynomial, gaussian };

/// A candidate kernel. Every kind here is entrywise nonnegative on
/// nonnegative data, which the multiplicative kernel updates rely on.
struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  int degree = 2;          // polynomial only, >= 1
  double offset = 0.0;     // polynomial only, >= 0
  double bandwidth = 1.0;  // gaussian only, > 0

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double offset) {
    return {KernelKind::polynomial, degree, offset, 1.0};
  }
  static KernelSpec gaussian(double bandwidth) {
    return {KernelKind::gaussian, 2, 0.0, bandwidth};
  }

  /// Throws ParameterError when a parameter is out of range.
  void validate() const;
  /// Human-readable tag, e.g. "gaussian(bandwidth=1)".
  std::string label() const;

  double operator()(const Eigen::Ref<const Vector>& a,
                    const Eigen::Ref<const Vector>& b) const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// Symmetric, entrywise nonnegative n x n Gram matrix with a record of how it
/// was produced.
class KernelMatrix {
 public:
  /// Throws DimensionError if not square, DomainError if asymmetric beyond
  /// 1e-10 or if any entry is negative / non-finite.
  KernelMatrix(Matrix gram, std::string label);

  std::size_t n() const { return static_cast<std::size_t>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }

 private:
  Matrix gram_;
  std::string label_;
};

/// K_ij = k(x_i, x_j) over the columns of x.
KernelMatrix gram(const KernelSpec& spec, const NonNegMatrix& x);

/// sum_k mu_k K^k. Throws DimensionError on length or size mismatch.
KernelMatrix combine(std::span<const KernelMatrix> kernels, const SimplexWeights& mu);

}  // namespace mrnmf
