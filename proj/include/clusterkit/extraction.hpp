#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "clusterkit/clustering.hpp"
#include "clusterkit/merge_history.hpp"

namespace clusterkit {

namespace detail {

/// Plain union-find over point indices with component sizes.
class PointUnionFind {
 public:
  explicit PointUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t up = parent_[x];
      parent_[x] = root;
      x = up;
    }
    return root;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t component_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Merges sorted by height (stable, so monotone histories keep their
/// order), with a representative point for each merge endpoint.
struct SortedMerges {
  std::vector<std::size_t> order;          // indices into h.merges
  std::vector<std::size_t> left_point;     // a point inside merge.left
  std::vector<std::size_t> right_point;    // a point inside merge.right

  SortedMerges(const MergeHistory& h) {
    const std::size_t n = h.n;
    order.resize(h.merges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return h.merges[a].height < h.merges[b].height;
    });
    // Representative point for every cluster id.
    std::vector<std::size_t> rep(n + h.merges.size());
    std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
    for (std::size_t t = 0; t < h.merges.size(); ++t) {
      rep[n + t] = rep[h.merges[t].left];
    }
    left_point.resize(h.merges.size());
    right_point.resize(h.merges.size());
    for (std::size_t t = 0; t < h.merges.size(); ++t) {
      left_point[t] = rep[h.merges[t].left];
      right_point[t] = rep[h.merges[t].right];
    }
  }
};

/// Labels the union-find components in order of their lowest member
/// index; components below min_size become noise.
inline Clustering label_components(PointUnionFind& uf, std::size_t n,
                                   std::size_t min_size) {
  Clustering c;
  c.assignment.assign(n, Clustering::kNoise);
  std::vector<int> label_of_root(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    if (uf.component_size(root) < min_size) continue;
    if (label_of_root[root] < 0) label_of_root[root] = next++;
    c.assignment[i] = label_of_root[root];
  }
  c.num_clusters = static_cast<std::size_t>(next);
  return c;
}

}  // namespace detail

/// Cuts the dendrogram at a height threshold: all merges with height at
/// most the threshold are applied (half-open cut from above). Inverting
/// histories are handled by processing merges in height order.
inline Clustering cut_by_height(const MergeHistory& h, double threshold) {
  const std::size_t n = h.n;
  detail::SortedMerges sorted(h);
  detail::PointUnionFind uf(n);
  for (std::size_t r = 0; r < sorted.order.size(); ++r) {
    const std::size_t t = sorted.order[r];
    if (h.merges[t].height > threshold) break;
    uf.unite(sorted.left_point[t], sorted.right_point[t]);
  }
  return detail::label_components(uf, n, 1);
}

/// Cuts the dendrogram into exactly k clusters by applying the first
/// n-k merges in height order.
inline Clustering cut_by_k(const MergeHistory& h, std::size_t k) {
  const std::size_t n = h.n;
  if (k < 1 || k > n) {
    throw std::invalid_argument("cut_by_k: k must be between 1 and n");
  }
  detail::SortedMerges sorted(h);
  detail::PointUnionFind uf(n);
  for (std::size_t r = 0; r < n - k; ++r) {
    const std::size_t t = sorted.order[r];
    uf.unite(sorted.left_point[t], sorted.right_point[t]);
  }
  return detail::label_components(uf, n, 1);
}

/// Extracts k clusters of at least min_size points while treating
/// undersized components as noise. Cut positions (number of height
/// ordered merges applied) are scanned from the coarsest down; a cut is
/// admissible when it shows exactly k components of size >= min_size and
/// every other component is a singleton. If no cut fits, k is relaxed
/// downward; relaxed cuts must leave actual noise behind, otherwise the
/// full merge state would always win with a single cluster. The achieved
/// k is reported in num_clusters. Never fails: in the worst case all
/// points are noise.
inline Clustering extract_with_noise(const MergeHistory& h, std::size_t k,
                                     std::size_t min_size) {
  const std::size_t n = h.n;
  if (k < 1) {
    throw std::invalid_argument("extract_with_noise: k must be at least 1");
  }
  if (min_size < 1) {
    throw std::invalid_argument("extract_with_noise: min_size must be at least 1");
  }
  detail::SortedMerges sorted(h);

  // One incremental sweep records, per cut position, how many components
  // are large enough and whether any small component is a non-singleton.
  const std::size_t cuts = h.merges.size() + 1;
  std::vector<std::size_t> big(cuts, 0);
  std::vector<std::size_t> small_multi(cuts, 0);
  std::vector<std::size_t> components(cuts, 0);
  {
    detail::PointUnionFind uf(n);
    std::size_t n_big = min_size <= 1 ? n : 0;
    std::size_t n_small_multi = 0;
    std::size_t n_comp = n;
    big[0] = n_big;
    small_multi[0] = n_small_multi;
    components[0] = n_comp;
    for (std::size_t r = 0; r < sorted.order.size(); ++r) {
      const std::size_t t = sorted.order[r];
      const std::size_t ra = uf.find(sorted.left_point[t]);
      const std::size_t rb = uf.find(sorted.right_point[t]);
      const std::size_t sa = uf.component_size(ra);
      const std::size_t sb = uf.component_size(rb);
      auto classify = [&](std::size_t s) {
        if (s >= min_size) {
          --n_big;
        } else if (s > 1) {
          --n_small_multi;
        }
      };
      classify(sa);
      classify(sb);
      const std::size_t s = sa + sb;
      if (s >= min_size) {
        ++n_big;
      } else if (s > 1) {
        ++n_small_multi;
      }
      --n_comp;
      uf.unite(ra, rb);
      big[r + 1] = n_big;
      small_multi[r + 1] = n_small_multi;
      components[r + 1] = n_comp;
    }
  }

  auto build = [&](std::size_t cut, std::size_t achieved_k) {
    detail::PointUnionFind uf(n);
    for (std::size_t r = 0; r < cut; ++r) {
      const std::size_t t = sorted.order[r];
      uf.unite(sorted.left_point[t], sorted.right_point[t]);
    }
    Clustering c = detail::label_components(uf, n, min_size);
    if (c.num_clusters != achieved_k) {
      throw std::logic_error("extract_with_noise: cut bookkeeping mismatch");
    }
    return c;
  };

  // Requested k first, highest cut wins.
  for (std::size_t cut = cuts; cut-- > 0;) {
    if (big[cut] == k && small_multi[cut] == 0) {
      return build(cut, k);
    }
  }
  // Relaxed targets: only cuts that actually separate noise qualify.
  for (std::size_t kk = k; kk-- > 1;) {
    for (std::size_t cut = cuts; cut-- > 0;) {
      if (big[cut] == kk && small_multi[cut] == 0 && components[cut] > kk) {
        return build(cut, kk);
      }
    }
  }
  // Last resort without noise left over (tiny inputs), then all-noise.
  for (std::size_t kk = k; kk-- > 1;) {
    for (std::size_t cut = cuts; cut-- > 0;) {
      if (big[cut] == kk && small_multi[cut] == 0) {
        return build(cut, kk);
      }
    }
  }
  Clustering c;
  c.assignment.assign(n, Clustering::kNoise);
  c.num_clusters = 0;
  return c;
}

}  // namespace clusterkit
