#include "mrnmf/kernel.hpp"

#include "mrnmf/errors.hpp"

#include <cmath>
#include <sstream>

namespace mrnmf {

void KernelSpec::validate() const {
  switch (kind) {
    case KernelKind::linear:
      return;
    case KernelKind::polynomial:
      if (degree < 1) throw ParameterError("polynomial kernel: degree must be >= 1");
      if (!(offset >= 0.0) || !std::isfinite(offset)) {
        throw ParameterError("polynomial kernel: offset must be finite and >= 0");
      }
      return;
    case KernelKind::gaussian:
      if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw ParameterError("gaussian kernel: bandwidth must be finite and > 0");
      }
      return;
  }
}

std::string KernelSpec::label() const {
  std::ostringstream out;
  switch (kind) {
    case KernelKind::linear:
      out << "linear";
      break;
    case KernelKind::polynomial:
      out << "polynomial(degree=" << degree << ",offset=" << offset << ")";
      break;
    case KernelKind::gaussian:
      out << "gaussian(bandwidth=" << bandwidth << ")";
      break;
  }
  return out.str();
}

double KernelSpec::operator()(const Eigen::Ref<const Vector>& a,
                              const Eigen::Ref<const Vector>& b) const {
  switch (kind) {
    case KernelKind::linear:
      return a.dot(b);
    case KernelKind::polynomial:
      return std::pow(a.dot(b) + offset, degree);
    case KernelKind::gaussian:
      return std::exp(-(a - b).squaredNorm() / (2.0 * bandwidth * bandwidth));
  }
  return 0.0;
}

KernelMatrix::KernelMatrix(Matrix gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0) {
    throw DimensionError("kernel matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram_.cols(); ++j) {
      const double v = gram_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError("kernel matrix entry (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") must be finite and >= 0");
      }
      if (j > i && std::abs(v - gram_(j, i)) > 1e-10) {
        throw DomainError("kernel matrix is not symmetric at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
  }
}

KernelMatrix gram(const KernelSpec& spec, const NonNegMatrix& x) {
  spec.validate();
  const Matrix& data = x.matrix();
  const Eigen::Index n = data.cols();
  Matrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = spec(data.col(i), data.col(j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return KernelMatrix(std::move(k), spec.label());
}

KernelMatrix combine(std::span<const KernelMatrix> kernels, const SimplexWeights& mu) {
  if (kernels.empty()) throw DimensionError("combine: no kernels");
  if (kernels.size() != mu.size()) {
    throw DimensionError("combine: " + std::to_string(kernels.size()) + " kernels but " +
                         std::to_string(mu.size()) + " weights");
  }
  const std::size_t n = kernels.front().n();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::ostringstream label;
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    if (kernels[k].n() != n) throw DimensionError("combine: kernels differ in size");
    out += mu[k] * kernels[k].gram();
    label << (k ? " + " : "") << mu[k] << "*" << kernels[k].label();
  }
  return KernelMatrix(std::move(out), label.str());
}

}  // namespace mrnmf
