#include "mrnmf/errors.hpp"
#include "mrnmf/kernel.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>

namespace mrnmf {
namespace {

std::vector<KernelSpec> bank_specs() {
  return {KernelSpec::linear(), KernelSpec::polynomial(2, 0.0), KernelSpec::polynomial(3, 1.5),
          KernelSpec::gaussian(0.5), KernelSpec::gaussian(4.0)};
}

TEST(Gram, LinearKernelOnIdentity) {
  const KernelMatrix k = gram(KernelSpec::linear(), NonNegMatrix(Matrix::Identity(2, 2)));
  EXPECT_EQ(k.gram(), Matrix::Identity(2, 2));
}

TEST(Gram, GaussianDiagonalIsOne) {
  const KernelMatrix k =
      gram(KernelSpec::gaussian(0.3), NonNegMatrix(oracle::random_matrix(4, 7, 1)));
  for (Eigen::Index i = 0; i < 7; ++i) EXPECT_EQ(k.gram()(i, i), 1.0);
}

TEST(Gram, PolynomialHandValue) {
  Matrix x(2, 2);
  x << 1, 1, 0, 1;
  const KernelMatrix k = gram(KernelSpec::polynomial(2, 0.0), NonNegMatrix(x));
  EXPECT_EQ(k.gram()(0, 1), 1.0);
  EXPECT_EQ(k.gram()(1, 1), 4.0);
}

TEST(Gram, MatchesPairwiseEvaluation) {
  const Matrix x = oracle::random_matrix(3, 6, 2);
  for (const auto& spec : bank_specs()) {
    SCOPED_TRACE(spec.label());
    const KernelMatrix k = gram(spec, NonNegMatrix(x));
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) {
        const double dot = x.col(i).dot(x.col(j));
        double expected = dot;
        if (spec.kind == KernelKind::polynomial) expected = std::pow(dot + spec.offset, spec.degree);
        if (spec.kind == KernelKind::gaussian) {
          expected = std::exp(-oracle::squared_distance(x, i, j) /
                              (2.0 * spec.bandwidth * spec.bandwidth));
        }
        EXPECT_NEAR(k.gram()(i, j), expected, 1e-12 * std::max(1.0, expected));
      }
    }
  }
}

TEST(Gram, SymmetricNonnegativeAndPsdOnRandomData) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(seed);
    const Matrix x = oracle::random_matrix(4, n, 300 + seed);
    for (const auto& spec : bank_specs()) {
      const Matrix k = gram(spec, NonNegMatrix(x)).gram();
      EXPECT_EQ(k, k.transpose());
      EXPECT_GE(k.minCoeff(), 0.0);
      const double smallest = Eigen::SelfAdjointEigenSolver<Matrix>(k).eigenvalues().minCoeff();
      EXPECT_GE(smallest, -1e-8 * k.trace() / static_cast<double>(n)) << spec.label();
    }
  }
}

TEST(Combine, OneHotSelectsKernel) {
  const NonNegMatrix x(oracle::random_matrix(3, 5, 4));
  const std::vector<KernelMatrix> bank = {gram(KernelSpec::linear(), x),
                                          gram(KernelSpec::gaussian(1.0), x)};
  EXPECT_EQ(combine(bank, SimplexWeights::one_hot(2, 1)).gram(), bank[1].gram());
  EXPECT_EQ(combine(bank, SimplexWeights::one_hot(2, 0)).gram(), bank[0].gram());
}

TEST(Combine, DuplicateKernelIsFixedPoint) {
  const NonNegMatrix x(oracle::random_matrix(3, 5, 5));
  const KernelMatrix k = gram(KernelSpec::gaussian(1.0), x);
  const std::vector<KernelMatrix> bank = {k, k};
  EXPECT_LE((combine(bank, SimplexWeights{0.3, 0.7}).gram() - k.gram()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Combine, HandEntry) {
  Matrix a = Matrix::Identity(2, 2);
  Matrix b = Matrix::Identity(2, 2);
  b(0, 1) = b(1, 0) = 2.0;
  const std::vector<KernelMatrix> bank = {KernelMatrix(a, "a"), KernelMatrix(b, "b")};
  EXPECT_EQ(combine(bank, SimplexWeights{0.5, 0.5}).gram()(0, 1), 1.0);
}

TEST(Combine, LinearInWeights) {
  const NonNegMatrix x(oracle::random_matrix(3, 6, 6));
  const std::vector<KernelMatrix> bank = {gram(KernelSpec::linear(), x),
                                          gram(KernelSpec::polynomial(2, 1.0), x),
                                          gram(KernelSpec::gaussian(0.7), x)};
  const Vector m1 = Vector::Map(std::vector<double>{0.2, 0.5, 0.3}.data(), 3);
  const Vector m2 = Vector::Map(std::vector<double>{0.6, 0.0, 0.4}.data(), 3);
  for (double a : {0.25, 0.5, 0.75}) {
    const Matrix mixed = combine(bank, SimplexWeights(a * m1 + (1 - a) * m2)).gram();
    const Matrix split = a * combine(bank, SimplexWeights(m1)).gram() +
                         (1 - a) * combine(bank, SimplexWeights(m2)).gram();
    EXPECT_LE((mixed - split).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Combine, LengthMismatchIsDimensionError) {
  const std::vector<KernelMatrix> bank = {KernelMatrix(Matrix::Identity(2, 2), "a")};
  EXPECT_THROW(combine(bank, SimplexWeights{0.5, 0.5}), DimensionError);
}

TEST(KernelSpecType, ValidatesParameters) {
  EXPECT_THROW(KernelSpec::polynomial(0, 0.0).validate(), ParameterError);
  EXPECT_THROW(KernelSpec::polynomial(2, -1.0).validate(), ParameterError);
  EXPECT_THROW(KernelSpec::gaussian(0.0).validate(), ParameterError);
  EXPECT_NO_THROW(KernelSpec::gaussian(2.0).validate());
}

TEST(KernelMatrixType, RejectsNegativeAndAsymmetricInput) {
  Matrix k = Matrix::Identity(2, 2);
  k(0, 1) = k(1, 0) = -0.1;
  EXPECT_THROW(KernelMatrix(k, "neg"), ParameterError);
  k(0, 1) = 0.5;
  k(1, 0) = 0.2;
  EXPECT_THROW(KernelMatrix(k, "asym"), DomainError);
  EXPECT_THROW(KernelMatrix(Matrix::Ones(2, 3), "rect"), DimensionError);
}

}  // namespace
}  // namespace mrnmf
