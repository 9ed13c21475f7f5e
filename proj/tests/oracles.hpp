#pragma once

// Independent reference implementations used to compute expected values.
// Everything here is deliberately naive: straight-line formulas, full
// matrices, exhaustive enumeration. Nothing is shared with the library
// internals beyond the public result types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/linkage.hpp"
#include "clusterkit/merge_history.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------
// PRNG references (independently coded from the published constants).

inline std::uint64_t ref_splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct RefXoroshiro {
  std::uint64_t s0 = 0, s1 = 0;

  explicit RefXoroshiro(std::uint64_t seed) {
    std::uint64_t sm = seed;
    do {
      s0 = ref_splitmix64(sm);
      s1 = ref_splitmix64(sm);
    } while (s0 == 0 && s1 == 0);
  }
  RefXoroshiro(std::uint64_t a, std::uint64_t b) : s0(a), s1(b) {}

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t next() {
    const std::uint64_t result = s0 + s1;
    const std::uint64_t t = s1 ^ s0;
    s0 = rotl(s0, 55) ^ t ^ (t << 14);
    s1 = rotl(t, 36);
    return result;
  }
};

// ---------------------------------------------------------------------
// Member-set linkage distances (criterion oracles).

inline double set_single(const clusterkit::CondensedDistanceMatrix& m,
                         const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& b) {
  double best = kInf;
  for (std::size_t p : a)
    for (std::size_t q : b) best = std::min(best, m.at(p, q));
  return best;
}

inline double set_complete(const clusterkit::CondensedDistanceMatrix& m,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
  double best = -kInf;
  for (std::size_t p : a)
    for (std::size_t q : b) best = std::max(best, m.at(p, q));
  return best;
}

inline double set_average(const clusterkit::CondensedDistanceMatrix& m,
                          const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
  double sum = 0.0;
  for (std::size_t p : a)
    for (std::size_t q : b) sum += m.at(p, q);
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

inline std::vector<double> set_mean(const clusterkit::Dataset& data,
                                    const std::vector<std::size_t>& a) {
  std::vector<double> mu(data.dimensionality(), 0.0);
  for (std::size_t p : a) {
    const double* row = data.row(p);
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += row[j];
  }
  for (double& v : mu) v /= static_cast<double>(a.size());
  return mu;
}

inline double mean_gap_sq(const clusterkit::Dataset& data,
                          const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
  const std::vector<double> ma = set_mean(data, a);
  const std::vector<double> mb = set_mean(data, b);
  double s = 0.0;
  for (std::size_t j = 0; j < ma.size(); ++j) {
    const double d = ma[j] - mb[j];
    s += d * d;
  }
  return s;
}

inline double set_ward(const clusterkit::Dataset& data,
                       const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  return 2.0 * (na * nb / (na + nb)) * mean_gap_sq(data, a, b);
}

inline double set_centroid(const clusterkit::Dataset& data,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
  return mean_gap_sq(data, a, b);
}

// Ward divides by |A|+|B|, the variance criterion by (|A|+|B|)^2: it is
// the increase in the size-weighted mean of per-cluster normalized
// variances, scaled so two singletons give their squared distance.
inline double set_min_variance(const clusterkit::Dataset& data,
                               const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double nab = na + nb;
  return 4.0 * (na * nb / (nab * nab)) * mean_gap_sq(data, a, b);
}

// ---------------------------------------------------------------------
// Naive Lance-Williams agglomeration: full active-cluster table, own
// coefficient formulas, shared tie rule (height, then smallest id pair).
// Cluster t's id is n + t after the t-th merge, like the library.

inline clusterkit::MergeHistory naive_lw(const clusterkit::CondensedDistanceMatrix& m,
                                         const clusterkit::LinkageScheme& scheme) {
  const std::size_t n = m.size();
  struct Active {
    std::size_t id;
    std::size_t size;
  };
  std::vector<Active> act(n);
  for (std::size_t i = 0; i < n; ++i) act[i] = {i, 1};

  // dist[x][y] between active slots, x < y.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = m.at(i, j);

  clusterkit::MergeHistory h;
  h.n = n;
  for (std::size_t t = 0; n >= 1 && t + 1 < n; ++t) {
    std::size_t bx = 0, by = 0;
    double best = kInf;
    bool found = false;
    for (std::size_t x = 0; x < act.size(); ++x) {
      for (std::size_t y = x + 1; y < act.size(); ++y) {
        const double d = dist[x][y];
        const std::size_t lo = std::min(act[x].id, act[y].id);
        const std::size_t hi = std::max(act[x].id, act[y].id);
        const std::size_t blo = found ? std::min(act[bx].id, act[by].id) : 0;
        const std::size_t bhi = found ? std::max(act[bx].id, act[by].id) : 0;
        if (!found || d < best ||
            (d == best && (lo < blo || (lo == blo && hi < bhi)))) {
          best = d;
          bx = x;
          by = y;
          found = true;
        }
      }
    }

    clusterkit::Merge mg;
    mg.left = std::min(act[bx].id, act[by].id);
    mg.right = std::max(act[bx].id, act[by].id);
    mg.height = best;
    mg.size = act[bx].size + act[by].size;
    h.merges.push_back(mg);

    const double na = static_cast<double>(act[bx].size);
    const double nb = static_cast<double>(act[by].size);
    std::vector<double> fresh(act.size(), 0.0);
    for (std::size_t c = 0; c < act.size(); ++c) {
      if (c == bx || c == by) continue;
      const double nc = static_cast<double>(act[c].size);
      double a1 = 0, a2 = 0, be = 0, ga = 0;
      switch (scheme.kind) {
        case clusterkit::LinkageKind::kSingle: a1 = a2 = 0.5; ga = -0.5; break;
        case clusterkit::LinkageKind::kComplete: a1 = a2 = 0.5; ga = 0.5; break;
        case clusterkit::LinkageKind::kGroupAverage:
          a1 = na / (na + nb); a2 = nb / (na + nb); break;
        case clusterkit::LinkageKind::kWeightedAverage: a1 = a2 = 0.5; break;
        case clusterkit::LinkageKind::kCentroid:
          a1 = na / (na + nb); a2 = nb / (na + nb);
          be = -(na * nb) / ((na + nb) * (na + nb));
          break;
        case clusterkit::LinkageKind::kMedian: a1 = a2 = 0.5; be = -0.25; break;
        case clusterkit::LinkageKind::kWard: {
          const double tt = na + nb + nc;
          a1 = (na + nc) / tt; a2 = (nb + nc) / tt; be = -nc / tt;
          break;
        }
        case clusterkit::LinkageKind::kMinVariance: {
          const double tt = na + nb + nc;
          a1 = (na + nc) / tt; a1 *= a1;
          a2 = (nb + nc) / tt; a2 *= a2;
          be = -(nc * (na + nb)) / (tt * tt);
          break;
        }
        case clusterkit::LinkageKind::kFlexibleBeta:
          a1 = a2 = (1.0 - scheme.beta) / 2.0; be = scheme.beta; break;
      }
      const double dac = dist[bx][c];
      const double dbc = dist[by][c];
      // Exact min / max for single and complete; the gamma form rounds.
      if (scheme.kind == clusterkit::LinkageKind::kSingle) {
        fresh[c] = std::min(dac, dbc);
      } else if (scheme.kind == clusterkit::LinkageKind::kComplete) {
        fresh[c] = std::max(dac, dbc);
      } else {
        fresh[c] = a1 * dac + a2 * dbc + be * best + ga * std::abs(dac - dbc);
      }
    }

    // Merge by replacing slot bx and erasing by.
    act[bx] = {n + t, mg.size};
    for (std::size_t c = 0; c < act.size(); ++c) {
      dist[bx][c] = dist[c][bx] = fresh[c];
    }
    act.erase(act.begin() + static_cast<std::ptrdiff_t>(by));
    for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(by));
    dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(by));
  }
  return h;
}

// ---------------------------------------------------------------------
// Prim's MST over the condensed matrix: sorted edge weights.

inline std::vector<double> mst_weights(const clusterkit::CondensedDistanceMatrix& m) {
  const std::size_t n = m.size();
  std::vector<char> in(n, 0);
  std::vector<double> key(n, kInf);
  std::vector<double> weights;
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v] && (u == n || key[v] < key[u])) u = v;
    }
    in[u] = 1;
    if (step > 0) weights.push_back(key[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v]) key[v] = std::min(key[v], m.at(u, v));
    }
  }
  std::sort(weights.begin(), weights.end());
  return weights;
}

// ---------------------------------------------------------------------
// Connected components of the threshold graph (edges with d <= h),
// labeled 0,1,2,... in order of each component's smallest point index.

inline std::vector<int> threshold_components(const clusterkit::CondensedDistanceMatrix& m,
                                             double h) {
  const std::size_t n = m.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.at(i, j) <= h) parent[find(i)] = find(j);
    }
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (label[r] < 0) label[r] = next++;
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = label[find(i)];
  return out;
}

// ---------------------------------------------------------------------
// Exhaustive minimax radius of a member set: best prototype (lowest
// index on ties) and its eccentricity.

inline std::pair<double, std::size_t> minimax_radius(
    const clusterkit::CondensedDistanceMatrix& m,
    const std::vector<std::size_t>& members) {
  double best = kInf;
  std::size_t proto = members.front();
  for (std::size_t p : members) {
    double ecc = 0.0;
    for (std::size_t q : members) {
      if (q != p) ecc = std::max(ecc, m.at(p, q));
    }
    if (ecc < best || (ecc == best && p < proto)) {
      best = ecc;
      proto = p;
    }
  }
  return {best, proto};
}

// ---------------------------------------------------------------------
// Exhaustive best total deviation over all C(n, k) medoid sets.

inline void enum_subsets(std::size_t n, std::size_t k,
                         std::vector<std::size_t>& cur, std::size_t from,
                         const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (std::size_t i = from; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    enum_subsets(n, k, cur, i + 1, fn);
    cur.pop_back();
  }
}

inline double td_of(const clusterkit::CondensedDistanceMatrix& m,
                    const std::vector<std::size_t>& medoids) {
  double td = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double best = kInf;
    for (std::size_t mm : medoids) {
      best = std::min(best, i == mm ? 0.0 : m.at(i, mm));
    }
    td += best;
  }
  return td;
}

inline double best_td_enum(const clusterkit::CondensedDistanceMatrix& m, std::size_t k) {
  double best = kInf;
  std::vector<std::size_t> cur;
  enum_subsets(m.size(), k, cur, 0,
               [&](const std::vector<std::size_t>& s) { best = std::min(best, td_of(m, s)); });
  return best;
}

}  // namespace oracle
