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

#include "clusterkit/clustering.hpp"
#include "clusterkit/dataset.hpp"
#include "clusterkit/metric.hpp"

namespace clusterkit {

enum class KMeansVariant {
  kLloyd,
  kMacQueen,
  kCompare,
  kSort,
  kElkan,
  kSimplifiedElkan,
  kHamerly,
  kAnnulus,
  kExponion,
};

inline const char* kmeans_variant_name(KMeansVariant v) {
  switch (v) {
    case KMeansVariant::kLloyd: return "lloyd";
    case KMeansVariant::kMacQueen: return "macqueen";
    case KMeansVariant::kCompare: return "compare";
    case KMeansVariant::kSort: return "sort";
    case KMeansVariant::kElkan: return "elkan";
    case KMeansVariant::kSimplifiedElkan: return "simplified_elkan";
    case KMeansVariant::kHamerly: return "hamerly";
    case KMeansVariant::kAnnulus: return "annulus";
    case KMeansVariant::kExponion: return "exponion";
  }
  return "?";
}

inline KMeansVariant kmeans_variant_from_name(const std::string& name) {
  if (name == "lloyd") return KMeansVariant::kLloyd;
  if (name == "macqueen") return KMeansVariant::kMacQueen;
  if (name == "compare") return KMeansVariant::kCompare;
  if (name == "sort") return KMeansVariant::kSort;
  if (name == "elkan") return KMeansVariant::kElkan;
  if (name == "simplified_elkan") return KMeansVariant::kSimplifiedElkan;
  if (name == "hamerly") return KMeansVariant::kHamerly;
  if (name == "annulus") return KMeansVariant::kAnnulus;
  if (name == "exponion") return KMeansVariant::kExponion;
  throw std::invalid_argument("unknown kmeans variant \"" + name + "\"");
}

struct KMeansResult {
  Clustering clustering;
  std::vector<std::vector<double>> means;
  double sse = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t distance_computations = 0;
};

namespace detail {

/// Mutable state shared by every means-based variant. Point-to-center
/// distances go through point_center_dist so the counter stays honest;
/// center-to-center geometry is bookkeeping and is not counted.
struct KMeansContext {
  const Dataset& data;
  std::size_t n;
  std::size_t d;
  std::size_t k;
  std::vector<double> means;  // k x d, row-major
  std::vector<int> assign;
  std::uint64_t point_center_computations = 0;

  KMeansContext(const Dataset& dataset, std::size_t k_,
                const std::vector<std::vector<double>>& centers)
      : data(dataset), n(dataset.size()), d(dataset.dimensionality()), k(k_),
        assign(dataset.size(), -1) {
    if (k == 0) {
      throw std::invalid_argument("kmeans: k must be at least 1");
    }
    if (k > n) {
      throw std::invalid_argument("kmeans: k exceeds the number of points");
    }
    if (centers.size() != k) {
      throw std::invalid_argument("kmeans: expected exactly k initial centers");
    }
    means.reserve(k * d);
    for (const auto& c : centers) {
      if (c.size() != d) {
        throw std::invalid_argument("kmeans: center dimensionality mismatch");
      }
      means.insert(means.end(), c.begin(), c.end());
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        if (std::equal(means.begin() + static_cast<std::ptrdiff_t>(a * d),
                       means.begin() + static_cast<std::ptrdiff_t>((a + 1) * d),
                       means.begin() + static_cast<std::ptrdiff_t>(b * d))) {
          throw std::invalid_argument("kmeans: duplicate initial centers");
        }
      }
    }
  }

  const double* mean(std::size_t j) const { return means.data() + j * d; }

  double point_center_dist(std::size_t i, std::size_t j) {
    ++point_center_computations;
    return std::sqrt(squared_euclidean(data.row(i), mean(j), d));
  }

  /// Recomputes means from the assignment; clusters that lost all their
  /// points keep the previous mean. Returns per-center movement.
  std::vector<double> update_means(std::vector<double>* old_means = nullptr) {
    std::vector<double> sums(k * d, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int a = assign[i];
      if (a < 0) continue;
      ++counts[static_cast<std::size_t>(a)];
      const double* row = data.row(i);
      double* s = sums.data() + static_cast<std::size_t>(a) * d;
      for (std::size_t c = 0; c < d; ++c) s[c] += row[c];
    }
    std::vector<double> shift(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double nv = sums[j * d + c] / static_cast<double>(counts[j]);
        const double diff = nv - means[j * d + c];
        acc += diff * diff;
        means[j * d + c] = nv;
      }
      shift[j] = std::sqrt(acc);
    }
    if (old_means) *old_means = means;
    return shift;
  }

  /// Full nearest-center pass, ties to the lowest index. Returns the
  /// number of changed assignments.
  std::size_t lloyd_pass() {
    std::size_t changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = point_center_dist(i, 0);
      for (std::size_t j = 1; j < k; ++j) {
        const double dj = point_center_dist(i, j);
        if (dj < best_d) {
          best_d = dj;
          best = static_cast<int>(j);
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        ++changed;
      }
    }
    return changed;
  }

  double sse() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (assign[i] < 0) continue;
      acc += squared_euclidean(data.row(i),
                               mean(static_cast<std::size_t>(assign[i])), d);
    }
    return acc;
  }

  KMeansResult finish(std::uint64_t iterations) const {
    KMeansResult r;
    r.clustering.assignment = assign;
    r.clustering.num_clusters = k;
    r.means.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      r.means[j].assign(mean(j), mean(j) + d);
    }
    r.clustering.mean_prototypes = r.means;
    r.sse = sse();
    r.iterations = iterations;
    r.distance_computations = point_center_computations;
    r.clustering.stats.iterations = iterations;
    r.clustering.stats.distance_computations = point_center_computations;
    return r;
  }

  /// Center-to-center distances, excluded from the counter.
  std::vector<double> center_matrix() const {
    std::vector<double> cc(k * k, 0.0);
    for (std::size_t a = 0; a + 1 < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const double v = std::sqrt(squared_euclidean(mean(a), mean(b), d));
        cc[a * k + b] = v;
        cc[b * k + a] = v;
      }
    }
    return cc;
  }
};

// --- Lloyd ---------------------------------------------------------------

inline KMeansResult kmeans_lloyd(KMeansContext& ctx, std::uint64_t maxiter) {
  std::uint64_t it = 0;
  for (;;) {
    ++it;
    const std::size_t changed = ctx.lloyd_pass();
    if (changed == 0) break;
    ctx.update_means();
    if (maxiter != 0 && it == maxiter) break;
  }
  return ctx.finish(it);
}

// --- MacQueen ------------------------------------------------------------

inline KMeansResult kmeans_macqueen(KMeansContext& ctx, std::uint64_t maxiter) {
  std::vector<std::size_t> counts(ctx.k, 0);
  std::uint64_t it = 0;
  for (;;) {
    ++it;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      int best = 0;
      double best_d = ctx.point_center_dist(i, 0);
      for (std::size_t j = 1; j < ctx.k; ++j) {
        const double dj = ctx.point_center_dist(i, j);
        if (dj < best_d) {
          best_d = dj;
          best = static_cast<int>(j);
        }
      }
      const int old = ctx.assign[i];
      if (old == best) continue;
      const double* row = ctx.data.row(i);
      if (old >= 0) {
        // Withdraw the point from its old running mean; the last point
        // leaves the mean untouched (stale mean convention).
        auto& cnt = counts[static_cast<std::size_t>(old)];
        if (cnt > 1) {
          double* m = ctx.means.data() + static_cast<std::size_t>(old) * ctx.d;
          for (std::size_t c = 0; c < ctx.d; ++c) {
            m[c] = (m[c] * static_cast<double>(cnt) - row[c]) /
                   static_cast<double>(cnt - 1);
          }
        }
        --cnt;
      }
      auto& cnt = counts[static_cast<std::size_t>(best)];
      ++cnt;
      double* m = ctx.means.data() + static_cast<std::size_t>(best) * ctx.d;
      for (std::size_t c = 0; c < ctx.d; ++c) {
        m[c] = (m[c] * static_cast<double>(cnt - 1) + row[c]) /
               static_cast<double>(cnt);
      }
      ctx.assign[i] = best;
      ++changed;
    }
    if (changed == 0) break;
    if (maxiter != 0 && it == maxiter) break;
  }
  // Replace the drifted running means with exact centroids; empty
  // clusters keep the running value.
  ctx.update_means();
  return ctx.finish(it);
}

// --- Compare-means and sort-means -----------------------------------------

inline KMeansResult kmeans_compare(KMeansContext& ctx, std::uint64_t maxiter,
                                   bool sorted_lists) {
  const std::size_t k = ctx.k;
  std::uint64_t it = 1;
  std::size_t changed = ctx.lloyd_pass();
  std::vector<std::size_t> neighbor_order;  // k x (k-1), sort variant only
  while (changed != 0 && (maxiter == 0 || it < maxiter)) {
    ctx.update_means();
    const std::vector<double> cc = ctx.center_matrix();
    if (sorted_lists) {
      neighbor_order.clear();
      neighbor_order.reserve(k * (k - 1));
      for (std::size_t a = 0; a < k; ++a) {
        std::vector<std::size_t> others;
        others.reserve(k - 1);
        for (std::size_t j = 0; j < k; ++j) {
          if (j != a) others.push_back(j);
        }
        std::sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
          if (cc[a * k + x] != cc[a * k + y]) return cc[a * k + x] < cc[a * k + y];
          return x < y;
        });
        neighbor_order.insert(neighbor_order.end(), others.begin(), others.end());
      }
    }
    ++it;
    changed = 0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      const std::size_t a = static_cast<std::size_t>(ctx.assign[i]);
      const double d_anchor = ctx.point_center_dist(i, a);
      int best = static_cast<int>(a);
      double best_d = d_anchor;
      if (sorted_lists) {
        const std::size_t* order = neighbor_order.data() + a * (k - 1);
        for (std::size_t r = 0; r < k - 1; ++r) {
          const std::size_t j = order[r];
          // Neighbors are sorted by center separation, so once the bound
          // fails every later one fails too. Strictly greater only: at
          // equality the candidate can still tie, and ties go to the
          // lowest index.
          if (cc[a * k + j] > d_anchor + best_d) break;
          const double dj = ctx.point_center_dist(i, j);
          if (dj < best_d || (dj == best_d && static_cast<int>(j) < best)) {
            best_d = dj;
            best = static_cast<int>(j);
          }
        }
      } else {
        for (std::size_t j = 0; j < k; ++j) {
          if (j == a) continue;
          if (cc[a * k + j] > d_anchor + best_d) continue;
          const double dj = ctx.point_center_dist(i, j);
          if (dj < best_d || (dj == best_d && static_cast<int>(j) < best)) {
            best_d = dj;
            best = static_cast<int>(j);
          }
        }
      }
      if (ctx.assign[i] != best) {
        ctx.assign[i] = best;
        ++changed;
      }
    }
    if (changed == 0) break;
  }
  if (changed != 0) ctx.update_means();
  return ctx.finish(it);
}

// --- Bounded variants ------------------------------------------------------

/// Debug hook: verifies that upper stays above the true distance to the
/// assigned center and lower bounds stay below the true distances.
struct BoundChecker {
  bool enabled = false;

  static double tol(double v) { return 1e-9 * (1.0 + std::fabs(v)); }

  void check_upper(double upper, double true_dist) const {
    if (enabled && upper + tol(true_dist) < true_dist) {
      throw std::logic_error("kmeans bounds: upper bound below true distance");
    }
  }
  void check_lower(double lower, double true_dist) const {
    if (enabled && lower > true_dist + tol(true_dist)) {
      throw std::logic_error("kmeans bounds: lower bound above true distance");
    }
  }
};

/// First pass shared by the bounded variants: full distance table,
/// nearest and second-nearest per point.
struct FullScanResult {
  std::vector<double> upper;    // distance to assigned center
  std::vector<double> second;   // distance to second-closest center
  std::vector<int> second_idx;  // index of that center
};

inline FullScanResult bounded_first_pass(KMeansContext& ctx,
                                         std::vector<double>* all_lower) {
  FullScanResult r;
  r.upper.assign(ctx.n, 0.0);
  r.second.assign(ctx.n, 0.0);
  r.second_idx.assign(ctx.n, -1);
  if (all_lower) all_lower->assign(ctx.n * ctx.k, 0.0);
  for (std::size_t i = 0; i < ctx.n; ++i) {
    int best = -1, second = -1;
    double best_d = 0.0, second_d = 0.0;
    for (std::size_t j = 0; j < ctx.k; ++j) {
      const double dj = ctx.point_center_dist(i, j);
      if (all_lower) (*all_lower)[i * ctx.k + j] = dj;
      if (best < 0 || dj < best_d) {
        second = best;
        second_d = best_d;
        best = static_cast<int>(j);
        best_d = dj;
      } else if (second < 0 || dj < second_d) {
        second = static_cast<int>(j);
        second_d = dj;
      }
    }
    ctx.assign[i] = best;
    r.upper[i] = best_d;
    r.second[i] = second_d;
    r.second_idx[i] = second;
  }
  return r;
}

/// Half the distance to the closest other center, per center.
inline std::vector<double> half_separation(const std::vector<double>& cc,
                                           std::size_t k) {
  std::vector<double> s(k, std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) s[a] = std::min(s[a], cc[a * k + b]);
    }
    s[a] *= 0.5;
  }
  return s;
}

inline KMeansResult kmeans_elkan(KMeansContext& ctx, std::uint64_t maxiter,
                                 bool simplified, const BoundChecker& bc) {
  const std::size_t k = ctx.k;
  std::vector<double> lower;
  FullScanResult fs = bounded_first_pass(ctx, &lower);
  std::vector<double> upper = std::move(fs.upper);
  std::uint64_t it = 1;
  bool converged = false;  // first pass always assigns
  while (!converged && (maxiter == 0 || it < maxiter)) {
    const std::vector<double> shift = ctx.update_means();
    for (std::size_t i = 0; i < ctx.n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        lower[i * k + j] = std::max(0.0, lower[i * k + j] - shift[j]);
      }
      upper[i] += shift[static_cast<std::size_t>(ctx.assign[i])];
    }
    std::vector<double> cc;
    std::vector<double> sep;
    if (!simplified) {
      cc = ctx.center_matrix();
      sep = half_separation(cc, k);
    }
    ++it;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      std::size_t a = static_cast<std::size_t>(ctx.assign[i]);
      if (bc.enabled) {
        const double ta = std::sqrt(squared_euclidean(ctx.data.row(i), ctx.mean(a), ctx.d));
        bc.check_upper(upper[i], ta);
        for (std::size_t j = 0; j < k; ++j) {
          const double tj = std::sqrt(squared_euclidean(ctx.data.row(i), ctx.mean(j), ctx.d));
          bc.check_lower(lower[i * k + j], tj);
        }
      }
      // Strict comparisons throughout: a bound that merely equals the
      // upper bound still admits a tie, and ties must fall to the lowest
      // index exactly as in the plain scan.
      if (!simplified && upper[i] < sep[a]) continue;
      bool tight = false;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == a) continue;
        double z = lower[i * k + j];
        if (!simplified) z = std::max(z, 0.5 * cc[a * k + j]);
        if (upper[i] < z) continue;
        if (!tight) {
          upper[i] = ctx.point_center_dist(i, a);
          lower[i * k + a] = upper[i];
          tight = true;
          if (upper[i] < z) continue;
        }
        const double dj = ctx.point_center_dist(i, j);
        lower[i * k + j] = dj;
        if (dj < upper[i] || (dj == upper[i] && j < a)) {
          a = j;
          upper[i] = dj;
        }
      }
      if (static_cast<std::size_t>(ctx.assign[i]) != a) {
        ctx.assign[i] = static_cast<int>(a);
        ++changed;
      }
    }
    converged = changed == 0;
  }
  if (!converged) ctx.update_means();
  return ctx.finish(it);
}

/// Hamerly-style single lower bound, with optional annulus or exponion
/// candidate filtering when the bounds fail.
enum class PruneStyle { kNone, kAnnulus, kExponion };

inline KMeansResult kmeans_hamerly(KMeansContext& ctx, std::uint64_t maxiter,
                                   PruneStyle style, const BoundChecker& bc) {
  const std::size_t k = ctx.k;
  const std::size_t n = ctx.n;
  FullScanResult fs = bounded_first_pass(ctx, nullptr);
  std::vector<double> upper = std::move(fs.upper);
  std::vector<double> lower = std::move(fs.second);
  std::vector<int> second_idx = std::move(fs.second_idx);

  std::vector<double> point_norm;
  if (style == PruneStyle::kAnnulus) {
    point_norm.resize(n);
    std::vector<double> origin(ctx.d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      point_norm[i] = std::sqrt(squared_euclidean(ctx.data.row(i), origin.data(), ctx.d));
    }
  }

  std::uint64_t it = 1;
  bool converged = false;
  while (!converged && (maxiter == 0 || it < maxiter)) {
    const std::vector<double> shift = ctx.update_means();
    // Largest and second-largest movement, for the shared lower bound.
    std::size_t arg_max = 0;
    double max1 = -1.0, max2 = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (shift[j] > max1) {
        max2 = max1;
        max1 = shift[j];
        arg_max = j;
      } else if (shift[j] > max2) {
        max2 = shift[j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = static_cast<std::size_t>(ctx.assign[i]);
      upper[i] += shift[a];
      lower[i] -= (a == arg_max) ? max2 : max1;
    }

    const std::vector<double> cc = ctx.center_matrix();
    const std::vector<double> sep = half_separation(cc, k);

    // Exponion: per-center neighbor lists sorted by separation.
    std::vector<std::size_t> neighbor_order;
    std::vector<double> cc_min(k, std::numeric_limits<double>::infinity());
    if (style == PruneStyle::kExponion && k > 1) {
      neighbor_order.reserve(k * (k - 1));
      for (std::size_t a = 0; a < k; ++a) {
        std::vector<std::size_t> others;
        others.reserve(k - 1);
        for (std::size_t j = 0; j < k; ++j) {
          if (j != a) others.push_back(j);
        }
        std::sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
          if (cc[a * k + x] != cc[a * k + y]) return cc[a * k + x] < cc[a * k + y];
          return x < y;
        });
        cc_min[a] = cc[a * k + others.front()];
        neighbor_order.insert(neighbor_order.end(), others.begin(), others.end());
      }
    }

    // Annulus: centers sorted by norm.
    std::vector<std::size_t> norm_order;
    std::vector<double> center_norm;
    if (style == PruneStyle::kAnnulus) {
      center_norm.resize(k);
      std::vector<double> origin(ctx.d, 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        center_norm[j] = std::sqrt(squared_euclidean(ctx.mean(j), origin.data(), ctx.d));
      }
      norm_order.resize(k);
      std::iota(norm_order.begin(), norm_order.end(), std::size_t{0});
      std::sort(norm_order.begin(), norm_order.end(), [&](std::size_t x, std::size_t y) {
        if (center_norm[x] != center_norm[y]) return center_norm[x] < center_norm[y];
        return x < y;
      });
    }

    ++it;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = static_cast<std::size_t>(ctx.assign[i]);
      if (bc.enabled) {
        const double ta = std::sqrt(squared_euclidean(ctx.data.row(i), ctx.mean(a), ctx.d));
        bc.check_upper(upper[i], ta);
        double true_second = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
          if (j == a) continue;
          true_second = std::min(true_second, std::sqrt(squared_euclidean(
                                                  ctx.data.row(i), ctx.mean(j), ctx.d)));
        }
        bc.check_lower(lower[i], true_second);
      }
      // Strict: a gate equal to the upper bound still admits a tied
      // center with a lower index, so only a strictly larger gate skips.
      const double gate = std::max(sep[a], lower[i]);
      if (upper[i] < gate) continue;
      upper[i] = ctx.point_center_dist(i, a);  // tighten
      if (upper[i] < gate) continue;

      int best = static_cast<int>(a);
      double best_d = upper[i];
      int second = -1;
      double second_d = std::numeric_limits<double>::infinity();
      auto offer = [&](std::size_t j, double dj) {
        if (dj < best_d || (dj == best_d && static_cast<int>(j) < best)) {
          second = best;
          second_d = best_d;
          best = static_cast<int>(j);
          best_d = dj;
        } else if (dj < second_d) {
          second = static_cast<int>(j);
          second_d = dj;
        }
      };

      if (style == PruneStyle::kNone || k == 1) {
        for (std::size_t j = 0; j < k; ++j) {
          if (j == a) continue;
          offer(j, ctx.point_center_dist(i, j));
        }
      } else if (style == PruneStyle::kAnnulus) {
        std::size_t b = static_cast<std::size_t>(second_idx[i]);
        const double db = ctx.point_center_dist(i, b);
        const double radius = upper[i] + db;
        offer(b, db);
        auto lo = std::lower_bound(norm_order.begin(), norm_order.end(),
                                   point_norm[i] - radius,
                                   [&](std::size_t j, double v) { return center_norm[j] < v; });
        for (auto itOrd = lo; itOrd != norm_order.end(); ++itOrd) {
          const std::size_t j = *itOrd;
          if (center_norm[j] > point_norm[i] + radius) break;
          if (j == a || j == b) continue;
          offer(j, ctx.point_center_dist(i, j));
        }
      } else {  // exponion
        const double radius = 2.0 * upper[i] + cc_min[a];
        const std::size_t* order = neighbor_order.data() + a * (k - 1);
        for (std::size_t r = 0; r < k - 1; ++r) {
          const std::size_t j = order[r];
          if (cc[a * k + j] > radius) break;
          offer(j, ctx.point_center_dist(i, j));
        }
      }

      upper[i] = best_d;
      lower[i] = second_d;
      if (second >= 0) second_idx[i] = second;
      if (ctx.assign[i] != best) {
        ctx.assign[i] = best;
        ++changed;
      }
    }
    converged = changed == 0;
  }
  if (!converged) ctx.update_means();
  return ctx.finish(it);
}

}  // namespace detail

/// Runs k-means from explicit initial centers. All variants reproduce
/// the classic alternating optimization exactly: per iteration they
/// assign every point to its nearest mean (ties to the lowest index, at
/// most maxiter iterations, 0 meaning until convergence) and recompute
/// means, differing only in how many point-to-center distances they
/// evaluate. MacQueen is the exception: it updates means after every
/// single reassignment, so it may walk a different path.
inline KMeansResult run_kmeans(const Dataset& data, std::size_t k,
                               KMeansVariant variant,
                               const std::vector<std::vector<double>>& centers,
                               std::uint64_t maxiter = 0,
                               bool validate_bounds = false) {
  detail::KMeansContext ctx(data, k, centers);
  detail::BoundChecker bc{validate_bounds};
  switch (variant) {
    case KMeansVariant::kLloyd:
      return detail::kmeans_lloyd(ctx, maxiter);
    case KMeansVariant::kMacQueen:
      return detail::kmeans_macqueen(ctx, maxiter);
    case KMeansVariant::kCompare:
      return detail::kmeans_compare(ctx, maxiter, false);
    case KMeansVariant::kSort:
      return detail::kmeans_compare(ctx, maxiter, true);
    case KMeansVariant::kElkan:
      return detail::kmeans_elkan(ctx, maxiter, false, bc);
    case KMeansVariant::kSimplifiedElkan:
      return detail::kmeans_elkan(ctx, maxiter, true, bc);
    case KMeansVariant::kHamerly:
      return detail::kmeans_hamerly(ctx, maxiter, detail::PruneStyle::kNone, bc);
    case KMeansVariant::kAnnulus:
      return detail::kmeans_hamerly(ctx, maxiter, detail::PruneStyle::kAnnulus, bc);
    case KMeansVariant::kExponion:
      return detail::kmeans_hamerly(ctx, maxiter, detail::PruneStyle::kExponion, bc);
  }
  throw std::invalid_argument("run_kmeans: unknown variant");
}

/// k-means with outlier trimming: after each assignment pass the
/// rate * n points farthest from their center are set aside as noise
/// (ties flag the higher index) and means are computed without them.
/// Noise points carry label -1 in the result.
inline KMeansResult run_kmeans_minusminus(
    const Dataset& data, std::size_t k,
    const std::vector<std::vector<double>>& centers, double rate,
    std::uint64_t maxiter = 0) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw std::invalid_argument("kmeans--: rate must lie in [0, 1)");
  }
  detail::KMeansContext ctx(data, k, centers);
  const std::size_t n = ctx.n;
  const std::size_t n_outliers =
      static_cast<std::size_t>(rate * static_cast<double>(n));
  if (n_outliers >= n) {
    throw std::invalid_argument("kmeans--: every point would become noise");
  }

  std::vector<int> labeled(n, -2);  // effective labels incl. noise
  std::vector<int> nearest(n, 0);
  std::vector<double> best_d(n, 0.0);
  std::vector<std::size_t> rank(n);
  std::uint64_t it = 0;
  for (;;) {
    ++it;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double bd = ctx.point_center_dist(i, 0);
      for (std::size_t j = 1; j < ctx.k; ++j) {
        const double dj = ctx.point_center_dist(i, j);
        if (dj < bd) {
          bd = dj;
          best = static_cast<int>(j);
        }
      }
      nearest[i] = best;
      best_d[i] = bd;
    }
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    // Farthest first; equal distances flag the higher index.
    std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      if (best_d[a] != best_d[b]) return best_d[a] > best_d[b];
      return a > b;
    });
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = nearest[i];
    for (std::size_t r = 0; r < n_outliers; ++r) next[rank[r]] = Clustering::kNoise;
    const bool same = next == labeled;
    labeled = std::move(next);
    ctx.assign = labeled;
    if (same) break;
    ctx.update_means();
    if (maxiter != 0 && it == maxiter) break;
  }
  return ctx.finish(it);
}

}  // namespace clusterkit
