#pragma once

// Small dataset generators shared by the unit and acceptance suites.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/random.hpp"

namespace testdata {

/// Uniform points in [0, 10)^d.
inline clusterkit::Dataset random_points(std::uint64_t seed, std::size_t n,
                                         std::size_t d) {
  clusterkit::RngState g(seed);
  std::vector<double> values;
  values.reserve(n * d);
  for (std::size_t i = 0; i < n * d; ++i) values.push_back(10.0 * g.next_double());
  return clusterkit::Dataset(n, d, std::move(values));
}

/// 2-D mixture of three round Gaussians (Box-Muller), centers well apart.
inline clusterkit::Dataset three_gaussians(std::uint64_t seed, std::size_t n) {
  clusterkit::RngState g(seed);
  const double cx[3] = {0.0, 8.0, 4.0};
  const double cy[3] = {0.0, 0.0, 7.0};
  std::vector<double> values;
  values.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % 3;
    const double u1 = 1.0 - g.next_double();
    const double u2 = g.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    values.push_back(cx[c] + r * std::cos(6.283185307179586 * u2));
    values.push_back(cy[c] + r * std::sin(6.283185307179586 * u2));
  }
  return clusterkit::Dataset(n, 2, std::move(values));
}

/// Integer grid points, heavy with exactly tied distances.
inline clusterkit::Dataset grid_points(std::size_t side) {
  std::vector<double> values;
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      values.push_back(static_cast<double>(x));
      values.push_back(static_cast<double>(y));
    }
  }
  return clusterkit::Dataset(side * side, 2, std::move(values));
}

}  // namespace testdata
