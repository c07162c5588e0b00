#include "mrnmf/synthetic.hpp"

#include "mrnmf/errors.hpp"
#include "mrnmf/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

namespace mrnmf {
namespace {

// Shift so that the smallest entry is zero when anything went negative.
Matrix shift_nonnegative(Matrix m) {
  const double low = m.minCoeff();
  if (low < 0.0) m.array() -= low;
  return m;
}

std::vector<int> half_split_labels(std::size_t n) {
  std::vector<int> labels(n);
  for (std::size_t j = 0; j < n; ++j) labels[j] = j < n / 2 ? 0 : 1;
  return labels;
}

Matrix cluster_rows(std::size_t d, const std::vector<int>& labels, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 0.5);
  Matrix x(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(labels.size()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const bool first = labels[static_cast<std::size_t>(j)] == 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const bool even = i % 2 == 0;
      const double center = (first == even) ? 1.0 : 4.0;
      x(i, j) = center + noise(rng);
    }
  }
  return x;
}

}  // namespace

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "low_rank") return SyntheticKind::low_rank;
  if (name == "two_clusters") return SyntheticKind::two_clusters;
  if (name == "noisy_features") return SyntheticKind::noisy_features;
  if (name == "two_rings") return SyntheticKind::two_rings;
  throw ParameterError("unknown synthetic kind '" + std::string(name) + "'");
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::low_rank:
      return "low_rank";
    case SyntheticKind::two_clusters:
      return "two_clusters";
    case SyntheticKind::noisy_features:
      return "noisy_features";
    case SyntheticKind::two_rings:
      return "two_rings";
  }
  return "unknown";
}

SyntheticData make_low_rank(std::size_t d, std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto fill = [&](std::size_t rows, std::size_t cols) {
    Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, j) = 1.0 - uniform(rng);
    return out;
  };
  Matrix h0 = fill(d, m);
  Matrix w0 = fill(m, n);
  Matrix x = h0 * w0;
  return {NonNegMatrix(std::move(x)), {}, NonNegMatrix(std::move(h0)),
          NonNegMatrix(std::move(w0))};
}

SyntheticData make_two_clusters(std::size_t d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto labels = half_split_labels(n);
  Matrix x = shift_nonnegative(cluster_rows(d, labels, rng));
  return {NonNegMatrix(std::move(x)), std::move(labels), std::nullopt, std::nullopt};
}

SyntheticData make_noisy_features(std::size_t informative, std::size_t noise, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto labels = half_split_labels(n);
  const Matrix signal = shift_nonnegative(cluster_rows(informative, labels, rng));
  std::uniform_real_distribution<double> uniform(0.0, 5.0);
  Matrix x(static_cast<Eigen::Index>(informative + noise), static_cast<Eigen::Index>(n));
  x.topRows(signal.rows()) = signal;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = signal.rows(); i < x.rows(); ++i) x(i, j) = uniform(rng);
  return {NonNegMatrix(std::move(x)), std::move(labels), std::nullopt, std::nullopt};
}

SyntheticData make_two_rings(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, 0.05);
  auto labels = half_split_labels(n);
  Matrix x(2, static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double radius = labels[static_cast<std::size_t>(j)] == 0 ? 1.0 : 3.0;
    const double t = angle(rng);
    x(0, j) = 3.5 + radius * std::cos(t) + jitter(rng);
    x(1, j) = 3.5 + radius * std::sin(t) + jitter(rng);
  }
  return {NonNegMatrix(shift_nonnegative(std::move(x))), std::move(labels), std::nullopt,
          std::nullopt};
}

SyntheticData make_synthetic(SyntheticKind kind, std::uint64_t seed) {
  switch (kind) {
    case SyntheticKind::low_rank:
      return make_low_rank(20, 30, 2, seed);
    case SyntheticKind::two_clusters:
      return make_two_clusters(5, 40, seed);
    case SyntheticKind::noisy_features:
      return make_noisy_features(5, 5, 40, seed);
    case SyntheticKind::two_rings:
      return make_two_rings(30, seed);
  }
  throw ParameterError("unknown synthetic kind");
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  save_matrix(data.x, dir / "X.csv", MatrixFormat::csv);
  if (!data.labels.empty()) {
    std::ofstream out(dir / "labels.csv");
    if (!out) throw IoError("cannot write labels.csv in '" + dir.string() + "'");
    for (const int label : data.labels) out << label << '\n';
  }
  if (data.h0) save_matrix(*data.h0, dir / "H0.csv", MatrixFormat::csv);
  if (data.w0) save_matrix(*data.w0, dir / "W0.csv", MatrixFormat::csv);
}

}  // namespace mrnmf
