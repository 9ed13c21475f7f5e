#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/linkage.hpp"
#include "clusterkit/merge_history.hpp"

namespace clusterkit {

namespace detail {

/// Shared tie rule for agglomerative candidate selection: smaller
/// distance first, then the lexicographically smallest cluster id pair.
struct MergeCandidate {
  double dist;
  std::size_t id_lo;
  std::size_t id_hi;

  bool better_than(const MergeCandidate& o) const {
    if (dist != o.dist) return dist < o.dist;
    if (id_lo != o.id_lo) return id_lo < o.id_lo;
    return id_hi < o.id_hi;
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Working state for matrix-based agglomeration: the condensed matrix is
/// updated in place, dead rows are masked by a liveness bitmap, and each
/// slot carries the id and size of the cluster it currently holds.
struct AgglomerationState {
  std::vector<double> dist;  // condensed entries, mutated in place
  std::size_t n;
  std::vector<bool> live;
  std::vector<std::size_t> id;
  std::vector<std::size_t> size;

  explicit AgglomerationState(const CondensedDistanceMatrix& m)
      : dist(m.entries()), n(m.size()), live(m.size(), true), id(m.size()),
        size(m.size(), 1) {
    std::iota(id.begin(), id.end(), std::size_t{0});
  }

  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  double d(std::size_t i, std::size_t j) const { return dist[offset(i, j)]; }

  MergeCandidate candidate(std::size_t i, std::size_t j) const {
    return {d(i, j), std::min(id[i], id[j]), std::max(id[i], id[j])};
  }

  /// Lance-Williams update of all live rows against the merge of slots
  /// a and b; the merged cluster lands in the lower slot, the other
  /// slot dies. Returns the surviving slot.
  std::size_t apply_merge(const LinkageScheme& scheme, std::size_t a, std::size_t b,
                          std::size_t new_id) {
    if (a > b) std::swap(a, b);
    const double d_ab = d(a, b);
    for (std::size_t c = 0; c < n; ++c) {
      if (!live[c] || c == a || c == b) continue;
      dist[offset(a, c)] =
          combine(scheme, d(a, c), d(b, c), d_ab, size[a], size[b], size[c]);
    }
    live[b] = false;
    size[a] += size[b];
    id[a] = new_id;
    return a;
  }
};

}  // namespace detail

/// Exhaustive-scan agglomeration: repeatedly merges the globally closest
/// pair of clusters under the scheme's update rule. Ties fall to the
/// smallest (min id, max id) pair. Heights are on the matrix scale, so
/// variance-style schemes expect a squared matrix.
inline MergeHistory run_agnes(const CondensedDistanceMatrix& m,
                              const LinkageScheme& scheme) {
  const std::size_t n = m.size();
  detail::AgglomerationState st(m);
  MergeHistory h;
  h.n = n;
  h.merges.reserve(n - 1);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    detail::MergeCandidate best{detail::kInf, 0, 0};
    std::size_t best_a = n, best_b = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!st.live[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!st.live[j]) continue;
        const detail::MergeCandidate c = st.candidate(i, j);
        if (best_a == n || c.better_than(best)) {
          best = c;
          best_a = i;
          best_b = j;
        }
      }
    }
    h.merges.push_back({best.id_lo, best.id_hi, best.dist, st.size[best_a] + st.size[best_b]});
    st.apply_merge(scheme, best_a, best_b, n + t);
  }
  return h;
}

/// AGNES with cached nearest-neighbor candidates per slot. Caches are
/// recomputed lazily when their target dies or the merged row changes
/// the picture, which skips most of the quadratic rescans.
inline MergeHistory run_anderberg(const CondensedDistanceMatrix& m,
                                  const LinkageScheme& scheme) {
  const std::size_t n = m.size();
  detail::AgglomerationState st(m);
  MergeHistory h;
  h.n = n;
  h.merges.reserve(n - 1);

  std::vector<std::size_t> nn_slot(n, n);
  std::vector<detail::MergeCandidate> nn_cand(n);

  auto recompute = [&](std::size_t i) {
    nn_slot[i] = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !st.live[j]) continue;
      const detail::MergeCandidate c = st.candidate(i, j);
      if (nn_slot[i] == n || c.better_than(nn_cand[i])) {
        nn_cand[i] = c;
        nn_slot[i] = j;
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (st.live[i]) recompute(i);
  }

  for (std::size_t t = 0; t + 1 < n; ++t) {
    std::size_t best_i = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!st.live[i] || nn_slot[i] == n) continue;
      if (best_i == n || nn_cand[i].better_than(nn_cand[best_i])) best_i = i;
    }
    const std::size_t a = best_i;
    const std::size_t b = nn_slot[best_i];
    const detail::MergeCandidate best = nn_cand[best_i];
    h.merges.push_back({best.id_lo, best.id_hi, best.dist, st.size[a] + st.size[b]});
    const std::size_t survivor = st.apply_merge(scheme, a, b, n + t);
    const std::size_t dead = survivor == a ? b : a;

    recompute(survivor);
    for (std::size_t i = 0; i < n; ++i) {
      if (!st.live[i] || i == survivor) continue;
      if (nn_slot[i] == dead || nn_slot[i] == survivor) {
        // The cached target no longer exists in its old form.
        recompute(i);
      } else {
        // The merged row may have moved closer than the cached pick.
        const detail::MergeCandidate c = st.candidate(i, survivor);
        if (c.better_than(nn_cand[i])) {
          nn_cand[i] = c;
          nn_slot[i] = survivor;
        }
      }
    }
  }
  return h;
}

namespace detail {

/// Orders provisional merges by height (stable), then renumbers cluster
/// ids so that the t-th emitted merge creates id n+t. Children precede
/// parents among equal heights because discovery order is preserved.
inline MergeHistory renumber_sorted(std::size_t n, std::vector<Merge> merges,
                                    std::vector<std::size_t> proto_points = {}) {
  std::vector<std::size_t> order(merges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return merges[a].height < merges[b].height;
  });
  // provisional id -> final id (points map to themselves)
  std::vector<std::size_t> remap(n + merges.size());
  std::iota(remap.begin(), remap.end(), std::size_t{0});
  MergeHistory h;
  h.n = n;
  h.merges.reserve(merges.size());
  if (!proto_points.empty()) h.prototypes.emplace();
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t src = order[rank];
    Merge m = merges[src];
    m.left = remap[m.left];
    m.right = remap[m.right];
    if (m.left > m.right) std::swap(m.left, m.right);
    remap[n + src] = n + rank;
    h.merges.push_back(m);
    if (!proto_points.empty()) h.prototypes->push_back(proto_points[src]);
  }
  return h;
}

}  // namespace detail

/// Nearest-neighbor-chain agglomeration. Requires a reducible scheme;
/// centroid, median, min_variance and flexible-beta with positive beta
/// are rejected. Merges are discovered out of height order and re-sorted
/// before ids are assigned. For schemes whose recursion value does not
/// depend on the merge order (all accepted ones except flexible-beta
/// with beta < 0, whose constant-coefficient update mixes d(A,B) by a
/// different factor per order) the output matches run_agnes on inputs
/// with distinct merge heights.
inline MergeHistory run_nnchain(const CondensedDistanceMatrix& m,
                                const LinkageScheme& scheme) {
  if (!scheme.reducible()) {
    throw std::invalid_argument(
        std::string("run_nnchain: non-reducible linkage ") + linkage_name(scheme.kind));
  }
  const std::size_t n = m.size();
  detail::AgglomerationState st(m);
  std::vector<Merge> merges;
  merges.reserve(n - 1);
  // Provisional ids: slot cluster ids as assigned in discovery order.
  std::vector<std::size_t> chain;
  chain.reserve(n);
  std::size_t merges_done = 0;
  while (merges_done + 1 < n) {
    if (chain.empty()) {
      // Deterministic restart: lowest live cluster id.
      std::size_t start = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (st.live[i] && (start == n || st.id[i] < st.id[start])) start = i;
      }
      chain.push_back(start);
    }
    const std::size_t top = chain.back();
    const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
    // Nearest neighbor of the chain head, preferring the predecessor on
    // exact ties so reciprocal pairs terminate the walk.
    std::size_t nn = n;
    detail::MergeCandidate nn_cand{detail::kInf, 0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      if (!st.live[j] || j == top) continue;
      const detail::MergeCandidate c = st.candidate(top, j);
      if (nn == n || c.better_than(nn_cand)) {
        nn_cand = c;
        nn = j;
      }
    }
    if (prev != n && st.d(top, prev) == nn_cand.dist) nn = prev;
    if (nn == prev && prev != n) {
      chain.pop_back();
      chain.pop_back();
      merges.push_back({st.id[top] /* provisional */, st.id[prev], st.d(top, prev),
                        st.size[top] + st.size[prev]});
      if (merges.back().left > merges.back().right) {
        std::swap(merges.back().left, merges.back().right);
      }
      const std::size_t survivor =
          st.apply_merge(scheme, top, prev, n + merges_done);
      ++merges_done;
      // The merged cluster may invalidate the chain tail's nearest
      // neighbor guarantee only if it is closer, which reducibility
      // rules out; the remaining chain stays valid.
      (void)survivor;
    } else {
      chain.push_back(nn);
    }
  }
  return detail::renumber_sorted(n, std::move(merges));
}

namespace detail {

/// Sibson's pointer-representation algorithm, quadratic time and linear
/// memory over the condensed matrix.
inline PointerHierarchy slink_pointers(const CondensedDistanceMatrix& mat) {
  const std::size_t n = mat.size();
  PointerHierarchy p;
  p.parent.assign(n, 0);
  p.lambda.assign(n, kInf);
  std::vector<double> m(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    p.parent[t] = t;
    p.lambda[t] = kInf;
    for (std::size_t i = 0; i < t; ++i) m[i] = mat.at(i, t);
    for (std::size_t i = 0; i < t; ++i) {
      if (p.lambda[i] >= m[i]) {
        m[p.parent[i]] = std::min(m[p.parent[i]], p.lambda[i]);
        p.lambda[i] = m[i];
        p.parent[i] = t;
      } else {
        m[p.parent[i]] = std::min(m[p.parent[i]], m[i]);
      }
    }
    for (std::size_t i = 0; i < t; ++i) {
      if (p.lambda[i] >= p.lambda[p.parent[i]]) p.parent[i] = t;
    }
  }
  return p;
}

}  // namespace detail

/// Single linkage via the pointer representation. The merge list is
/// reconstructed so that it matches run_agnes with the single scheme,
/// including the tie rule: within a group of equal heights the original
/// matrix decides which cluster pairs are actually at that distance, and
/// the smallest id pair merges first.
inline MergeHistory run_slink(const CondensedDistanceMatrix& m) {
  const std::size_t n = m.size();
  const PointerHierarchy p = detail::slink_pointers(m);

  // Candidates (lambda, point); lambda values are exact matrix entries,
  // so grouping by equality is safe.
  std::vector<std::size_t> order;
  order.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(p.lambda[i])) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p.lambda[a] != p.lambda[b]) return p.lambda[a] < p.lambda[b];
    return a < b;
  });

  MergeHistory h;
  h.n = n;
  h.merges.reserve(n - 1);
  detail::ClusterTracker uf(n);
  // Representative point per component root for pair enumeration.
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  std::size_t g = 0;
  while (g < order.size()) {
    const double height = p.lambda[order[g]];
    std::size_t g_end = g;
    while (g_end < order.size() && p.lambda[order[g_end]] == height) ++g_end;
    if (g_end - g == 1) {
      const std::size_t i = order[g];
      const std::size_t ka = uf.find(i);
      const std::size_t kb = uf.find(p.parent[i]);
      h.merges.push_back(uf.merge_points(i, p.parent[i], height));
      const std::size_t root = uf.find(i);
      if (root != ka) {
        members[root].insert(members[root].end(), members[ka].begin(), members[ka].end());
      }
      if (root != kb) {
        members[root].insert(members[root].end(), members[kb].begin(), members[kb].end());
      }
    } else {
      // Tie group: collect the clusters involved and simulate the
      // exhaustive scan on the threshold subgraph at this height.
      std::vector<std::size_t> roots;
      for (std::size_t q = g; q < g_end; ++q) {
        roots.push_back(uf.find(order[q]));
        roots.push_back(uf.find(p.parent[order[q]]));
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

      struct Edge {
        std::size_t pa, pb;  // witness points of the two clusters
      };
      std::vector<Edge> edges;
      for (std::size_t x = 0; x + 1 < roots.size(); ++x) {
        for (std::size_t y = x + 1; y < roots.size(); ++y) {
          // Single-link distance between the two current clusters.
          double best = detail::kInf;
          for (std::size_t pa : members[roots[x]]) {
            for (std::size_t pb : members[roots[y]]) {
              best = std::min(best, m.at(pa, pb));
            }
          }
          if (best == height) {
            edges.push_back({members[roots[x]].front(), members[roots[y]].front()});
          }
        }
      }
      // Contract edges one at a time, smallest current id pair first.
      std::size_t remaining = g_end - g;
      while (remaining > 0) {
        std::size_t best_e = edges.size();
        detail::MergeCandidate best{detail::kInf, 0, 0};
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const std::size_t ca = uf.cluster_id(edges[e].pa);
          const std::size_t cb = uf.cluster_id(edges[e].pb);
          if (ca == cb) continue;
          const detail::MergeCandidate c{height, std::min(ca, cb), std::max(ca, cb)};
          if (best_e == edges.size() || c.better_than(best)) {
            best = c;
            best_e = e;
          }
        }
        if (best_e == edges.size()) {
          throw std::logic_error("run_slink: tie group ran out of edges");
        }
        const std::size_t ka = uf.find(edges[best_e].pa);
        const std::size_t kb = uf.find(edges[best_e].pb);
        h.merges.push_back(uf.merge_points(edges[best_e].pa, edges[best_e].pb, height));
        const std::size_t root = uf.find(edges[best_e].pa);
        if (root != ka) {
          members[root].insert(members[root].end(), members[ka].begin(), members[ka].end());
        }
        if (root != kb) {
          members[root].insert(members[root].end(), members[kb].begin(), members[kb].end());
        }
        --remaining;
      }
    }
    g = g_end;
  }
  return h;
}

/// Raw pointer representation of the single linkage hierarchy.
inline PointerHierarchy run_slink_pointers(const CondensedDistanceMatrix& m) {
  return detail::slink_pointers(m);
}

// ---------------------------------------------------------------------------
// Prototype-based (minimax) agglomeration
// ---------------------------------------------------------------------------

enum class MiniMaxEngine {
  kMatrix,
  kAnderberg,
  kNNChain,
};

namespace detail {

/// Minimax distance of the union of two member lists: the smallest
/// covering radius any member achieves, with the lower point index
/// winning radius ties. Also reports that prototype.
struct MiniMaxEval {
  double radius;
  std::size_t prototype;
};

inline MiniMaxEval minimax_union(const CondensedDistanceMatrix& m,
                                 const std::vector<std::size_t>& a,
                                 const std::vector<std::size_t>& b) {
  MiniMaxEval best{kInf, 0};
  bool first = true;
  auto consider = [&](std::size_t p) {
    double radius = 0.0;
    for (std::size_t q : a) {
      if (q != p) radius = std::max(radius, m.at(p, q));
    }
    for (std::size_t q : b) {
      if (q != p) radius = std::max(radius, m.at(p, q));
    }
    if (first || radius < best.radius ||
        (radius == best.radius && p < best.prototype)) {
      best = {radius, p};
      first = false;
    }
  };
  for (std::size_t p : a) consider(p);
  for (std::size_t p : b) consider(p);
  return best;
}

/// Shared state for the minimax engines: member lists per live slot and
/// a cached cluster-pair distance matrix.
struct MiniMaxState {
  const CondensedDistanceMatrix& points;
  std::size_t n;
  std::vector<bool> live;
  std::vector<std::size_t> id;
  std::vector<std::vector<std::size_t>> members;
  std::vector<double> dist;  // condensed over slots

  explicit MiniMaxState(const CondensedDistanceMatrix& m)
      : points(m), n(m.size()), live(m.size(), true), id(m.size()),
        members(m.size()), dist(m.entries()) {
    std::iota(id.begin(), id.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  }

  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  double d(std::size_t i, std::size_t j) const { return dist[offset(i, j)]; }

  MergeCandidate candidate(std::size_t i, std::size_t j) const {
    return {d(i, j), std::min(id[i], id[j]), std::max(id[i], id[j])};
  }

  /// Merges slots a and b: the union lands in the lower slot and its
  /// distances to every live cluster are recomputed from the members.
  /// Returns the prototype of the merged cluster.
  std::size_t apply_merge(std::size_t a, std::size_t b, std::size_t new_id) {
    if (a > b) std::swap(a, b);
    const MiniMaxEval self = minimax_union(points, members[a], members[b]);
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    live[b] = false;
    id[a] = new_id;
    for (std::size_t c = 0; c < n; ++c) {
      if (!live[c] || c == a) continue;
      dist[offset(a, c)] = minimax_union(points, members[a], members[c]).radius;
    }
    return self.prototype;
  }
};

}  // namespace detail

/// Agglomeration under the minimax criterion: the distance between two
/// clusters is the smallest radius at which one member of their union
/// covers all of it, and each merge records that member as the cluster
/// prototype. The three engines produce identical output on inputs with
/// distinct merge heights (the criterion is reducible, so the chain
/// engine applies).
inline MergeHistory run_minimax(const CondensedDistanceMatrix& m,
                                MiniMaxEngine engine = MiniMaxEngine::kMatrix) {
  const std::size_t n = m.size();
  detail::MiniMaxState st(m);

  if (engine == MiniMaxEngine::kMatrix) {
    MergeHistory h;
    h.n = n;
    h.merges.reserve(n - 1);
    h.prototypes.emplace();
    for (std::size_t t = 0; t + 1 < n; ++t) {
      detail::MergeCandidate best{detail::kInf, 0, 0};
      std::size_t best_a = n, best_b = n;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!st.live[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!st.live[j]) continue;
          const detail::MergeCandidate c = st.candidate(i, j);
          if (best_a == n || c.better_than(best)) {
            best = c;
            best_a = i;
            best_b = j;
          }
        }
      }
      h.merges.push_back(
          {best.id_lo, best.id_hi, best.dist,
           st.members[best_a].size() + st.members[best_b].size()});
      h.prototypes->push_back(st.apply_merge(best_a, best_b, n + t));
    }
    return h;
  }

  if (engine == MiniMaxEngine::kAnderberg) {
    MergeHistory h;
    h.n = n;
    h.merges.reserve(n - 1);
    h.prototypes.emplace();
    std::vector<std::size_t> nn_slot(n, n);
    std::vector<detail::MergeCandidate> nn_cand(n);
    auto recompute = [&](std::size_t i) {
      nn_slot[i] = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !st.live[j]) continue;
        const detail::MergeCandidate c = st.candidate(i, j);
        if (nn_slot[i] == n || c.better_than(nn_cand[i])) {
          nn_cand[i] = c;
          nn_slot[i] = j;
        }
      }
    };
    for (std::size_t i = 0; i < n; ++i) recompute(i);
    for (std::size_t t = 0; t + 1 < n; ++t) {
      std::size_t best_i = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!st.live[i] || nn_slot[i] == n) continue;
        if (best_i == n || nn_cand[i].better_than(nn_cand[best_i])) best_i = i;
      }
      const std::size_t a = best_i;
      const std::size_t b = nn_slot[best_i];
      const detail::MergeCandidate best = nn_cand[best_i];
      h.merges.push_back({best.id_lo, best.id_hi, best.dist,
                          st.members[a].size() + st.members[b].size()});
      const std::size_t survivor = std::min(a, b);
      const std::size_t dead = std::max(a, b);
      h.prototypes->push_back(st.apply_merge(a, b, n + t));
      recompute(survivor);
      for (std::size_t i = 0; i < n; ++i) {
        if (!st.live[i] || i == survivor) continue;
        if (nn_slot[i] == dead || nn_slot[i] == survivor) {
          recompute(i);
        } else {
          const detail::MergeCandidate c = st.candidate(i, survivor);
          if (c.better_than(nn_cand[i])) {
            nn_cand[i] = c;
            nn_slot[i] = survivor;
          }
        }
      }
    }
    return h;
  }

  // Chain engine; minimax distances only grow under merging, so
  // reciprocal nearest neighbor pairs are safe to contract early.
  std::vector<Merge> merges;
  std::vector<std::size_t> protos;
  merges.reserve(n - 1);
  protos.reserve(n - 1);
  std::vector<std::size_t> chain;
  std::size_t merges_done = 0;
  while (merges_done + 1 < n) {
    if (chain.empty()) {
      std::size_t start = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (st.live[i] && (start == n || st.id[i] < st.id[start])) start = i;
      }
      chain.push_back(start);
    }
    const std::size_t top = chain.back();
    const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
    std::size_t nn = n;
    detail::MergeCandidate nn_cand{detail::kInf, 0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      if (!st.live[j] || j == top) continue;
      const detail::MergeCandidate c = st.candidate(top, j);
      if (nn == n || c.better_than(nn_cand)) {
        nn_cand = c;
        nn = j;
      }
    }
    if (prev != n && st.d(top, prev) == nn_cand.dist) nn = prev;
    if (nn == prev && prev != n) {
      chain.pop_back();
      chain.pop_back();
      Merge rec{std::min(st.id[top], st.id[prev]), std::max(st.id[top], st.id[prev]),
                st.d(top, prev), st.members[top].size() + st.members[prev].size()};
      merges.push_back(rec);
      protos.push_back(st.apply_merge(top, prev, n + merges_done));
      ++merges_done;
    } else {
      chain.push_back(nn);
    }
  }
  return detail::renumber_sorted(n, std::move(merges), std::move(protos));
}

}  // namespace clusterkit
