#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clusterkit/clustering.hpp"
#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/metric.hpp"

namespace clusterkit {

namespace detail {

/// Per-cluster member lists; noise points appear in none of them.
inline std::vector<std::vector<std::size_t>> cluster_members(
    const Clustering& c, std::size_t n) {
  if (c.assignment.size() != n) {
    throw std::invalid_argument("evaluation: assignment length does not match data");
  }
  std::vector<std::vector<std::size_t>> members(c.num_clusters);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = c.assignment[i];
    if (a < 0) continue;
    if (static_cast<std::size_t>(a) >= c.num_clusters) {
      throw std::invalid_argument("evaluation: cluster label out of range");
    }
    members[static_cast<std::size_t>(a)].push_back(i);
  }
  return members;
}

inline std::vector<double> centroid_of(const Dataset& data,
                                       const std::vector<std::size_t>& members) {
  const std::size_t d = data.dimensionality();
  std::vector<double> c(d, 0.0);
  for (std::size_t i : members) {
    const double* row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) c[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) c[j] /= static_cast<double>(members.size());
  return c;
}

/// Members and centroids of non-empty clusters only, plus how many
/// points they cover. Shared by the centroid-based indices.
struct CentroidView {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::vector<double>> centroids;
  std::size_t covered = 0;
};

inline CentroidView centroid_view(const Dataset& data, const Clustering& c) {
  CentroidView v;
  for (auto& mem : cluster_members(c, data.size())) {
    if (mem.empty()) continue;
    v.covered += mem.size();
    v.centroids.push_back(centroid_of(data, mem));
    v.members.push_back(std::move(mem));
  }
  return v;
}

}  // namespace detail

/// Sum of squared euclidean distances to the recomputed centroid of each
/// point's cluster. Noise points are excluded; all-noise input throws.
inline double sse(const Dataset& data, const Clustering& c) {
  const detail::CentroidView v = detail::centroid_view(data, c);
  if (v.covered == 0) {
    throw std::invalid_argument("sse: every point is noise");
  }
  const std::size_t d = data.dimensionality();
  double acc = 0.0;
  for (std::size_t g = 0; g < v.members.size(); ++g) {
    for (std::size_t i : v.members[g]) {
      acc += squared_euclidean(data.row(i), v.centroids[g].data(), d);
    }
  }
  return acc;
}

/// Silhouette over a precomputed distance matrix. Returns the mean over
/// non-noise points and the per-point values (noise entries are 0 and do
/// not contribute to the mean). Members of singleton clusters score 0,
/// as does a point with a = b = 0.
inline std::pair<double, std::vector<double>> silhouette(
    const CondensedDistanceMatrix& m, const Clustering& c) {
  const std::size_t n = m.size();
  const auto members = detail::cluster_members(c, n);
  std::size_t non_empty = 0, covered = 0;
  for (const auto& mem : members) {
    if (!mem.empty()) ++non_empty;
    covered += mem.size();
  }
  if (non_empty < 2) {
    throw std::invalid_argument("silhouette: need at least two non-empty clusters");
  }

  std::vector<double> s(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int a = c.assignment[i];
    if (a < 0) continue;
    const auto& own = members[static_cast<std::size_t>(a)];
    if (own.size() <= 1) continue;  // singleton rule: s = 0
    double a_val = 0.0;
    for (std::size_t j : own) {
      if (j != i) a_val += m.at(i, j);
    }
    a_val /= static_cast<double>(own.size() - 1);
    double b_val = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < members.size(); ++g) {
      if (g == static_cast<std::size_t>(a) || members[g].empty()) continue;
      double mean = 0.0;
      for (std::size_t j : members[g]) mean += m.at(i, j);
      mean /= static_cast<double>(members[g].size());
      b_val = std::min(b_val, mean);
    }
    const double denom = std::max(a_val, b_val);
    s[i] = denom > 0.0 ? (b_val - a_val) / denom : 0.0;
    total += s[i];
  }
  return {covered > 0 ? total / static_cast<double>(covered) : 0.0, s};
}

/// Silhouette approximation using distances to centroids: a = distance
/// to the own centroid, b = smallest distance to another centroid.
/// Convention for a = 0: s = 1 when b > 0, else 0.
inline double simplified_silhouette(const Dataset& data, const Clustering& c) {
  const detail::CentroidView v = detail::centroid_view(data, c);
  if (v.centroids.size() < 2) {
    throw std::invalid_argument(
        "simplified_silhouette: need at least two non-empty clusters");
  }
  const std::size_t d = data.dimensionality();
  double total = 0.0;
  for (std::size_t g = 0; g < v.members.size(); ++g) {
    for (std::size_t i : v.members[g]) {
      const double a_val = std::sqrt(squared_euclidean(data.row(i), v.centroids[g].data(), d));
      double b_val = std::numeric_limits<double>::infinity();
      for (std::size_t h = 0; h < v.centroids.size(); ++h) {
        if (h == g) continue;
        b_val = std::min(b_val, std::sqrt(squared_euclidean(
                                    data.row(i), v.centroids[h].data(), d)));
      }
      double s;
      if (a_val == 0.0) {
        s = b_val > 0.0 ? 1.0 : 0.0;
      } else {
        const double denom = std::max(a_val, b_val);
        s = denom > 0.0 ? (b_val - a_val) / denom : 0.0;
      }
      total += s;
    }
  }
  return total / static_cast<double>(v.covered);
}

/// Davies-Bouldin index: mean over clusters of the worst
/// (S_i + S_j) / M_ij ratio, S = mean euclidean distance to the
/// centroid, M = centroid separation. Coincident centroids throw.
inline double davies_bouldin(const Dataset& data, const Clustering& c) {
  const detail::CentroidView v = detail::centroid_view(data, c);
  const std::size_t k = v.centroids.size();
  if (k < 2) {
    throw std::invalid_argument("davies_bouldin: need at least two non-empty clusters");
  }
  const std::size_t d = data.dimensionality();
  std::vector<double> scatter(k, 0.0);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t i : v.members[g]) {
      scatter[g] += std::sqrt(squared_euclidean(data.row(i), v.centroids[g].data(), d));
    }
    scatter[g] /= static_cast<double>(v.members[g].size());
  }
  double acc = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    double worst = 0.0;
    for (std::size_t h = 0; h < k; ++h) {
      if (h == g) continue;
      const double sep = std::sqrt(squared_euclidean(v.centroids[g].data(),
                                                     v.centroids[h].data(), d));
      if (sep == 0.0) {
        throw std::invalid_argument("davies_bouldin: coincident centroids");
      }
      worst = std::max(worst, (scatter[g] + scatter[h]) / sep);
    }
    acc += worst;
  }
  return acc / static_cast<double>(k);
}

/// Variance-ratio criterion (between-group over within-group variance,
/// normalized by degrees of freedom). Requires 2 <= k <= n-1 over the
/// non-noise points and a positive within-group sum.
inline double variance_ratio(const Dataset& data, const Clustering& c) {
  const detail::CentroidView v = detail::centroid_view(data, c);
  const std::size_t k = v.centroids.size();
  const std::size_t n = v.covered;
  if (k < 2 || k + 1 > n) {
    throw std::invalid_argument("variance_ratio: need 2 <= k <= n-1 non-empty clusters");
  }
  const std::size_t d = data.dimensionality();
  std::vector<double> overall(d, 0.0);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t i : v.members[g]) {
      const double* row = data.row(i);
      for (std::size_t j = 0; j < d; ++j) overall[j] += row[j];
    }
  }
  for (std::size_t j = 0; j < d; ++j) overall[j] /= static_cast<double>(n);

  double bgss = 0.0, wgss = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    bgss += static_cast<double>(v.members[g].size()) *
            squared_euclidean(v.centroids[g].data(), overall.data(), d);
    for (std::size_t i : v.members[g]) {
      wgss += squared_euclidean(data.row(i), v.centroids[g].data(), d);
    }
  }
  if (wgss == 0.0) {
    throw std::invalid_argument("variance_ratio: zero within-group variance");
  }
  return (bgss / static_cast<double>(k - 1)) / (wgss / static_cast<double>(n - k));
}

}  // namespace clusterkit
