#pragma once

#include "mrnmf/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace mrnmf {

enum class SyntheticKind { low_rank, two_clusters, noisy_features, two_rings };

SyntheticKind parse_synthetic_kind(std::string_view name);
std::string_view to_string(SyntheticKind kind);

struct SyntheticData {
  NonNegMatrix x;
  std::vector<int> labels;        // cluster / ring id per sample, when meaningful
  std::optional<NonNegMatrix> h0; // low_rank ground truth
  std::optional<NonNegMatrix> w0;
};

/// X = H0 W0 with uniform (0, 1] factors.
SyntheticData make_low_rank(std::size_t d, std::size_t n, std::size_t m,
                            std::uint64_t seed);

/// Two Gaussian blobs with opposite feature profiles, shifted nonnegative.
SyntheticData make_two_clusters(std::size_t d, std::size_t n, std::uint64_t seed);

/// Two-cluster rows on top, followed by uniform pure-noise rows.
SyntheticData make_noisy_features(std::size_t informative, std::size_t noise,
                                  std::size_t n, std::uint64_t seed);

/// Two concentric 2-D rings placed in the positive quadrant.
SyntheticData make_two_rings(std::size_t n, std::uint64_t seed);

/// Default sizes: low_rank 20x30 rank 2, two_clusters 5x40,
/// noisy_features (5 + 5)x40, two_rings 2x30.
SyntheticData make_synthetic(SyntheticKind kind, std::uint64_t seed);

/// Writes X.csv, labels.csv (if any) and H0.csv / W0.csv (if any) into dir.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir);

}  // namespace mrnmf
