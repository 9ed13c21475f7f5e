#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/metric.hpp"

namespace clusterkit {

/// Upper-triangular pairwise distance matrix in condensed row-major
/// layout: for i < j the entry index is i*n - i*(i+1)/2 + (j - i - 1),
/// giving n*(n-1)/2 stored values.
class CondensedDistanceMatrix {
 public:
  CondensedDistanceMatrix() = default;

  CondensedDistanceMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) {
      throw std::invalid_argument("CondensedDistanceMatrix: need at least one point");
    }
    if (entries_.size() != n_ * (n_ - 1) / 2) {
      throw std::invalid_argument(
          "CondensedDistanceMatrix: entry count does not match n*(n-1)/2");
    }
  }

  std::size_t size() const { return n_; }

  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  /// Distance between two distinct point indices (symmetric access).
  double at(std::size_t i, std::size_t j) const {
    if (i == j || i >= n_ || j >= n_) {
      throw std::invalid_argument("CondensedDistanceMatrix: invalid index pair");
    }
    return entries_[offset(i, j)];
  }

  void set(std::size_t i, std::size_t j, double value) {
    if (i == j || i >= n_ || j >= n_) {
      throw std::invalid_argument("CondensedDistanceMatrix: invalid index pair");
    }
    entries_[offset(i, j)] = value;
  }

  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Default ceiling on stored pairwise entries (about 800 MB of doubles).
inline constexpr std::size_t kDefaultMatrixEntryLimit = 100000000;

/// Materializes the pairwise matrix for a dataset. Refuses inputs whose
/// condensed size would exceed max_entries.
inline CondensedDistanceMatrix condensed_matrix(
    const Dataset& data, Metric metric,
    std::size_t max_entries = kDefaultMatrixEntryLimit) {
  const std::size_t n = data.size();
  const std::size_t count = n * (n - 1) / 2;
  if (count > max_entries) {
    throw std::invalid_argument(
        "condensed_matrix: pairwise matrix would exceed the entry limit");
  }
  std::vector<double> entries;
  entries.reserve(count);
  const std::size_t d = data.dimensionality();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      entries.push_back(distance(data.row(i), data.row(j), d, metric));
    }
  }
  return CondensedDistanceMatrix(n, std::move(entries));
}

}  // namespace clusterkit
