#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace clusterkit {

/// Flat partition of a dataset. Labels are small non-negative integers;
/// -1 marks noise points that belong to no cluster.
struct Clustering {
  static constexpr int kNoise = -1;

  std::vector<int> assignment;
  std::size_t num_clusters = 0;

  /// Per-cluster prototypes where the producing algorithm has them:
  /// mean vectors for the means family, point indices for medoids.
  std::optional<std::vector<std::vector<double>>> mean_prototypes;
  std::optional<std::vector<std::size_t>> medoid_prototypes;

  struct Stats {
    std::uint64_t iterations = 0;
    std::uint64_t distance_computations = 0;
  };
  Stats stats;

  std::size_t size() const { return assignment.size(); }

  std::size_t noise_count() const {
    std::size_t c = 0;
    for (int a : assignment) {
      if (a < 0) ++c;
    }
    return c;
  }
};

/// Sanity check used by tests and the output writer: labels must lie in
/// [-1, num_clusters).
inline void validate_clustering(const Clustering& c) {
  for (int a : c.assignment) {
    if (a < -1 || a >= static_cast<int>(c.num_clusters)) {
      throw std::invalid_argument("Clustering: label out of range");
    }
  }
}

}  // namespace clusterkit
