#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/kmedoids.hpp"
#include "clusterkit/metric.hpp"
#include "clusterkit/random.hpp"

namespace clusterkit {

enum class InitKind {
  kFirstK,
  kRandomlyChosen,
  kUniformGenerated,
  kNormalGenerated,
  kKMeansPP,
  kOstrovsky,
  kPamBuild,
  kPark,
  kLab,
  kFarthestPoints,
  kFarthestSum,
  kPredefined,
};

inline const char* init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::kFirstK: return "first_k";
    case InitKind::kRandomlyChosen: return "randomly_chosen";
    case InitKind::kUniformGenerated: return "uniform_generated";
    case InitKind::kNormalGenerated: return "normal_generated";
    case InitKind::kKMeansPP: return "kmeanspp";
    case InitKind::kOstrovsky: return "ostrovsky";
    case InitKind::kPamBuild: return "pam_build";
    case InitKind::kPark: return "park";
    case InitKind::kLab: return "lab";
    case InitKind::kFarthestPoints: return "farthest_points";
    case InitKind::kFarthestSum: return "farthest_sum";
    case InitKind::kPredefined: return "predefined";
  }
  return "?";
}

inline InitKind init_kind_from_name(const std::string& name) {
  if (name == "first_k") return InitKind::kFirstK;
  if (name == "randomly_chosen") return InitKind::kRandomlyChosen;
  if (name == "uniform_generated") return InitKind::kUniformGenerated;
  if (name == "normal_generated") return InitKind::kNormalGenerated;
  if (name == "kmeanspp") return InitKind::kKMeansPP;
  if (name == "ostrovsky") return InitKind::kOstrovsky;
  if (name == "pam_build") return InitKind::kPamBuild;
  if (name == "park") return InitKind::kPark;
  if (name == "lab") return InitKind::kLab;
  if (name == "farthest_points") return InitKind::kFarthestPoints;
  if (name == "farthest_sum") return InitKind::kFarthestSum;
  if (name == "predefined") return InitKind::kPredefined;
  throw std::invalid_argument("unknown initialization \"" + name + "\"");
}

struct InitStrategy {
  InitKind kind = InitKind::kKMeansPP;
  std::vector<std::vector<double>> predefined_centers;  // kPredefined only
};

/// Whether the strategy picks existing points (so it can seed medoid
/// algorithms) rather than synthesizing coordinate vectors.
inline bool init_produces_indices(InitKind k) {
  return k != InitKind::kUniformGenerated && k != InitKind::kNormalGenerated &&
         k != InitKind::kPredefined;
}

struct InitResult {
  std::vector<std::size_t> indices;  // empty for vector-only strategies
  std::vector<std::vector<double>> centers;
  std::vector<std::string> warnings;
  bool index_based = true;
};

namespace detail {

inline std::vector<std::vector<double>> rows_of(const Dataset& data,
                                                const std::vector<std::size_t>& idx) {
  std::vector<std::vector<double>> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    out.emplace_back(data.row(i), data.row(i) + data.dimensionality());
  }
  return out;
}

/// One cumulative inverse-transform draw over non-negative weights.
/// Returns the first index whose prefix sum exceeds r = u * total. A
/// non-positive total signals the degenerate all-zero case.
inline std::size_t weighted_draw(RngState& rng, const std::vector<double>& w,
                                 double total) {
  const double r = rng.next_double() * total;
  double cum = 0.0;
  std::size_t last_positive = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) last_positive = i;
    cum += w[i];
    if (cum > r) return i;
  }
  // Rounding can leave cum == total <= r; fall back to the last
  // positive-weight index.
  if (last_positive == w.size()) {
    throw std::logic_error("weighted_draw: no positive weight");
  }
  return last_positive;
}

/// Standard normal via the Box-Muller cosine branch; one draw consumes
/// two uniforms, the sine mate is discarded for a fixed stream layout.
inline double standard_normal(RngState& rng) {
  const double u1 = 1.0 - rng.next_double();  // (0, 1]
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline void require_k_le_n(std::size_t k, std::size_t n, const char* who) {
  if (k == 0) {
    throw std::invalid_argument(std::string(who) + ": k must be at least 1");
  }
  if (k > n) {
    throw std::invalid_argument(std::string(who) +
                                ": k exceeds the number of points");
  }
}

/// Greedy D^2 continuation shared by kmeanspp and ostrovsky: extends
/// chosen by drawing points with probability proportional to the squared
/// distance to the nearest chosen point. Zero total weight falls back to
/// a uniform draw among the remaining points.
inline void d2_continue(const Dataset& data, Metric metric, std::size_t k,
                        RngState& rng, std::vector<std::size_t>& chosen) {
  const std::size_t n = data.size();
  const std::size_t d = data.dimensionality();
  std::vector<double> near(n, std::numeric_limits<double>::infinity());
  std::vector<char> is_chosen(n, 0);
  for (std::size_t c : chosen) is_chosen[c] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c : chosen) {
      near[i] = std::min(near[i], distance(data.row(i), data.row(c), d, metric));
    }
  }
  std::vector<double> w(n);
  while (chosen.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = near[i] * near[i];
      total += w[i];
    }
    std::size_t pick;
    if (total > 0.0) {
      pick = weighted_draw(rng, w, total);
    } else {
      // All points coincide with chosen centers: uniform among the rest.
      std::size_t remaining = 0;
      for (std::size_t i = 0; i < n; ++i) remaining += is_chosen[i] ? 0 : 1;
      std::uint64_t r = rng_index(rng, remaining);
      pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (is_chosen[i]) continue;
        if (r == 0) {
          pick = i;
          break;
        }
        --r;
      }
    }
    chosen.push_back(pick);
    is_chosen[pick] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      near[i] = std::min(near[i], distance(data.row(i), data.row(pick), d, metric));
    }
  }
}

}  // namespace detail

/// Produces k initial centers. Index strategies return both the point
/// indices and their coordinate vectors; generated strategies return
/// vectors only. The RNG draw layout per strategy is fixed, so equal
/// seeds replay equal choices.
inline InitResult initialize(const InitStrategy& s, const Dataset& data,
                             std::size_t k, RngState& rng,
                             Metric metric = Metric::kEuclidean) {
  const std::size_t n = data.size();
  const std::size_t d = data.dimensionality();
  InitResult r;
  r.index_based = init_produces_indices(s.kind);

  switch (s.kind) {
    case InitKind::kFirstK: {
      detail::require_k_le_n(k, n, "first_k");
      r.indices.resize(k);
      std::iota(r.indices.begin(), r.indices.end(), std::size_t{0});
      break;
    }
    case InitKind::kRandomlyChosen: {
      detail::require_k_le_n(k, n, "randomly_chosen");
      r.indices = sample_k(rng, n, k);
      break;
    }
    case InitKind::kUniformGenerated: {
      if (k == 0) throw std::invalid_argument("uniform_generated: k must be at least 1");
      std::vector<double> lo(d, std::numeric_limits<double>::infinity());
      std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
          lo[c] = std::min(lo[c], data.at(i, c));
          hi[c] = std::max(hi[c], data.at(i, c));
        }
      }
      r.centers.assign(k, std::vector<double>(d));
      for (auto& center : r.centers) {
        for (std::size_t c = 0; c < d; ++c) {
          center[c] = lo[c] + rng.next_double() * (hi[c] - lo[c]);
        }
      }
      break;
    }
    case InitKind::kNormalGenerated: {
      if (k == 0) throw std::invalid_argument("normal_generated: k must be at least 1");
      std::vector<double> mean(d, 0.0), sd(d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) mean[c] += data.at(i, c);
      }
      for (std::size_t c = 0; c < d; ++c) mean[c] /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = data.at(i, c) - mean[c];
          sd[c] += diff * diff;
        }
      }
      // Population (biased) standard deviation, for determinism across
      // implementations of the sample correction.
      for (std::size_t c = 0; c < d; ++c) {
        sd[c] = std::sqrt(sd[c] / static_cast<double>(n));
      }
      r.centers.assign(k, std::vector<double>(d));
      for (auto& center : r.centers) {
        for (std::size_t c = 0; c < d; ++c) {
          center[c] = mean[c] + sd[c] * detail::standard_normal(rng);
        }
      }
      break;
    }
    case InitKind::kKMeansPP: {
      detail::require_k_le_n(k, n, "kmeanspp");
      r.indices.push_back(static_cast<std::size_t>(rng_index(rng, n)));
      detail::d2_continue(data, metric, k, rng, r.indices);
      break;
    }
    case InitKind::kOstrovsky: {
      detail::require_k_le_n(k, n, "ostrovsky");
      if (k == 1) {
        r.indices.push_back(static_cast<std::size_t>(rng_index(rng, n)));
        break;
      }
      // First pair (i < j) drawn with probability proportional to the
      // squared pairwise distance, by one cumulative draw over all pairs.
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double dd = distance(data.row(i), data.row(j), d, metric);
          total += dd * dd;
        }
      }
      if (total > 0.0) {
        const double target = rng.next_double() * total;
        double cum = 0.0;
        std::size_t pi = n - 2, pj = n - 1;  // fallback: rounding overshoot
        bool done = false;
        for (std::size_t i = 0; i + 1 < n && !done; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            const double dd = distance(data.row(i), data.row(j), d, metric);
            cum += dd * dd;
            if (cum > target) {
              pi = i;
              pj = j;
              done = true;
              break;
            }
          }
        }
        r.indices = {pi, pj};
      } else {
        // All points coincide: any two distinct indices.
        const std::size_t first = static_cast<std::size_t>(rng_index(rng, n));
        std::uint64_t off = rng_index(rng, n - 1);
        std::size_t second = static_cast<std::size_t>(off) + (off >= first ? 1 : 0);
        r.indices = {first, second};
      }
      detail::d2_continue(data, metric, k, rng, r.indices);
      break;
    }
    case InitKind::kPamBuild: {
      detail::require_k_le_n(k, n, "pam_build");
      const CondensedDistanceMatrix m = condensed_matrix(data, metric);
      r.indices = pam_build(m, k).medoids;
      break;
    }
    case InitKind::kPark: {
      detail::require_k_le_n(k, n, "park");
      // v_j = sum_i d(i,j) / rowsum(i); the k smallest v win.
      std::vector<double> rowsum(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) rowsum[i] += distance(data.row(i), data.row(j), d, metric);
        }
      }
      std::vector<double> v(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (rowsum[i] <= 0.0) continue;  // duplicate-only rows spread no mass
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) v[j] += distance(data.row(i), data.row(j), d, metric) / rowsum[i];
        }
      }
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
      });
      r.indices.assign(order.begin(), order.begin() + k);
      for (std::size_t a = 0; a + 1 < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          if (std::equal(data.row(r.indices[a]), data.row(r.indices[a]) + d,
                         data.row(r.indices[b]))) {
            r.warnings.push_back(
                "park initialization chose coincident points " +
                std::to_string(r.indices[a]) + " and " +
                std::to_string(r.indices[b]));
          }
        }
      }
      break;
    }
    case InitKind::kLab: {
      detail::require_k_le_n(k, n, "lab");
      const std::size_t ss = std::min(
          n, static_cast<std::size_t>(10.0 + std::ceil(std::sqrt(static_cast<double>(n)))));
      std::vector<char> is_chosen(n, 0);
      std::vector<double> near(n, std::numeric_limits<double>::infinity());
      while (r.indices.size() < k) {
        std::vector<std::size_t> sub = sample_k(rng, n, ss);
        std::sort(sub.begin(), sub.end());  // ties resolve to lowest index
        std::size_t best = n;
        double best_score = 0.0;
        for (std::size_t c : sub) {
          if (is_chosen[c]) continue;
          double score = 0.0;
          if (r.indices.empty()) {
            for (std::size_t j : sub) {
              score -= distance(data.row(j), data.row(c), d, metric);
            }
          } else {
            for (std::size_t j : sub) {
              score += std::max(near[j] - distance(data.row(j), data.row(c), d, metric),
                                0.0);
            }
          }
          if (best == n || score > best_score) {
            best = c;
            best_score = score;
          }
        }
        if (best == n) {
          // Whole subsample already chosen; take the lowest leftover.
          for (std::size_t i = 0; i < n; ++i) {
            if (!is_chosen[i]) {
              best = i;
              break;
            }
          }
        }
        r.indices.push_back(best);
        is_chosen[best] = 1;
        for (std::size_t i = 0; i < n; ++i) {
          near[i] = std::min(near[i], distance(data.row(i), data.row(best), d, metric));
        }
      }
      break;
    }
    case InitKind::kFarthestPoints:
    case InitKind::kFarthestSum: {
      const bool by_min = s.kind == InitKind::kFarthestPoints;
      detail::require_k_le_n(k, n, by_min ? "farthest_points" : "farthest_sum");
      r.indices.push_back(static_cast<std::size_t>(rng_index(rng, n)));
      std::vector<char> is_chosen(n, 0);
      is_chosen[r.indices[0]] = 1;
      std::vector<double> acc(n, by_min ? std::numeric_limits<double>::infinity() : 0.0);
      while (r.indices.size() < k) {
        const std::size_t latest = r.indices.back();
        for (std::size_t i = 0; i < n; ++i) {
          const double dd = distance(data.row(i), data.row(latest), d, metric);
          acc[i] = by_min ? std::min(acc[i], dd) : acc[i] + dd;
        }
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (is_chosen[i]) continue;
          if (best == n || acc[i] > acc[best]) best = i;
        }
        r.indices.push_back(best);
        is_chosen[best] = 1;
      }
      break;
    }
    case InitKind::kPredefined: {
      if (s.predefined_centers.size() != k) {
        throw std::invalid_argument("predefined: expected exactly k centers");
      }
      for (const auto& c : s.predefined_centers) {
        if (c.size() != d) {
          throw std::invalid_argument("predefined: center dimensionality mismatch");
        }
      }
      r.centers = s.predefined_centers;
      break;
    }
  }

  if (r.index_based) {
    r.centers = detail::rows_of(data, r.indices);
  }
  return r;
}

}  // namespace clusterkit
