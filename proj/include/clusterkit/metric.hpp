#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace clusterkit {

enum class Metric {
  kEuclidean,
  kSquaredEuclidean,
  kManhattan,
};

inline const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kSquaredEuclidean: return "squared_euclidean";
    case Metric::kManhattan: return "manhattan";
  }
  return "?";
}

inline Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "squared_euclidean") return Metric::kSquaredEuclidean;
  if (name == "manhattan") return Metric::kManhattan;
  throw std::invalid_argument("unknown metric \"" + name +
                              "\" (expected euclidean, squared_euclidean or manhattan)");
}

inline double squared_euclidean(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

inline double distance(const double* a, const double* b, std::size_t d, Metric m) {
  switch (m) {
    case Metric::kEuclidean:
      return std::sqrt(squared_euclidean(a, b, d));
    case Metric::kSquaredEuclidean:
      return squared_euclidean(a, b, d);
    case Metric::kManhattan: {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        acc += std::fabs(a[i] - b[i]);
      }
      return acc;
    }
  }
  throw std::invalid_argument("distance: unknown metric");
}

/// Distance between two equally sized coordinate vectors.
inline double distance(const std::vector<double>& a, const std::vector<double>& b,
                       Metric m) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimensionality mismatch");
  }
  return distance(a.data(), b.data(), a.size(), m);
}

}  // namespace clusterkit
