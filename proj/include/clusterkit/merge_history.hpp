#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace clusterkit {

/// One agglomeration step. Cluster ids follow the convention that the
/// original points are 0..n-1 and merge t creates id n+t, so left and
/// right always reference earlier ids.
struct Merge {
  std::size_t left;
  std::size_t right;
  double height;
  std::size_t size;  // points in the merged cluster
};

/// Full dendrogram of n-1 merges over n points.
struct MergeHistory {
  std::size_t n = 0;
  std::vector<Merge> merges;
  /// Per-merge representative point, filled by prototype-based criteria.
  std::optional<std::vector<std::size_t>> prototypes;

  std::size_t cluster_id_of_merge(std::size_t t) const { return n + t; }
};

/// Pointer representation of a single-linkage style hierarchy: parent[i]
/// is a higher-indexed point whose cluster point i joins at level
/// lambda[i]; the last point carries lambda = +inf.
struct PointerHierarchy {
  std::vector<std::size_t> parent;
  std::vector<double> lambda;
};

/// Structural check: every merge consumes two live earlier ids, sizes
/// add up, and exactly one root remains. Throws on violation.
inline void validate_merge_history(const MergeHistory& h) {
  const std::size_t n = h.n;
  if (n == 0) {
    throw std::invalid_argument("merge history: empty");
  }
  if (h.merges.size() != n - 1) {
    throw std::invalid_argument("merge history: expected n-1 merges");
  }
  if (h.prototypes && h.prototypes->size() != h.merges.size()) {
    throw std::invalid_argument("merge history: prototype count mismatch");
  }
  std::vector<bool> live(n + h.merges.size(), false);
  std::vector<std::size_t> size(n + h.merges.size(), 1);
  for (std::size_t i = 0; i < n; ++i) live[i] = true;
  for (std::size_t t = 0; t < h.merges.size(); ++t) {
    const Merge& m = h.merges[t];
    const std::size_t id = n + t;
    if (m.left >= id || m.right >= id || m.left == m.right) {
      throw std::invalid_argument("merge history: merge references invalid ids");
    }
    if (!live[m.left] || !live[m.right]) {
      throw std::invalid_argument("merge history: merge references consumed id");
    }
    live[m.left] = false;
    live[m.right] = false;
    size[id] = size[m.left] + size[m.right];
    if (m.size != size[id]) {
      throw std::invalid_argument("merge history: size does not add up");
    }
    live[id] = true;
  }
}

/// Converts a hierarchy to the pointer form. Each cluster is represented
/// by its highest point index; merging clusters with representatives a < b
/// records parent[a] = b at the merge height.
inline PointerHierarchy to_pointer_hierarchy(const MergeHistory& h) {
  const std::size_t n = h.n;
  PointerHierarchy p;
  p.parent.resize(n);
  p.lambda.assign(n, std::numeric_limits<double>::infinity());
  std::iota(p.parent.begin(), p.parent.end(), std::size_t{0});
  std::vector<std::size_t> rep(n + h.merges.size());
  std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
  for (std::size_t t = 0; t < h.merges.size(); ++t) {
    const Merge& m = h.merges[t];
    std::size_t a = rep[m.left];
    std::size_t b = rep[m.right];
    if (a > b) std::swap(a, b);
    p.parent[a] = b;
    p.lambda[a] = m.height;
    rep[n + t] = b;
  }
  return p;
}

namespace detail {

/// Union-find over cluster ids that tracks the current id of each
/// component under the "merge t creates id n+t" numbering.
class ClusterTracker {
 public:
  explicit ClusterTracker(std::size_t n)
      : n_(n), parent_(2 * n), id_(2 * n), size_(2 * n, 1), merges_done_(0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::iota(id_.begin(), id_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::size_t up = parent_[x];
      parent_[x] = root;
      x = up;
    }
    return root;
  }

  std::size_t cluster_id(std::size_t point) { return id_[find(point)]; }
  std::size_t cluster_size(std::size_t point) { return size_[find(point)]; }

  /// Merges the components of two points, returns the Merge record.
  Merge merge_points(std::size_t a, std::size_t b, double height) {
    std::size_t ra = find(a);
    std::size_t rb = find(b);
    if (ra == rb) {
      throw std::invalid_argument("ClusterTracker: merging a component with itself");
    }
    Merge m;
    m.left = std::min(id_[ra], id_[rb]);
    m.right = std::max(id_[ra], id_[rb]);
    m.height = height;
    m.size = size_[ra] + size_[rb];
    parent_[rb] = ra;
    size_[ra] = m.size;
    id_[ra] = n_ + merges_done_;
    ++merges_done_;
    return m;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> id_;
  std::vector<std::size_t> size_;
  std::size_t merges_done_;
};

}  // namespace detail

/// Rebuilds a merge list from the pointer form by processing points in
/// order of ascending (lambda, index). Exact for hierarchies with
/// distinct heights; with ties the pair grouping is canonical but may
/// differ from the agglomerative order that produced the input.
inline MergeHistory from_pointer_hierarchy(const PointerHierarchy& p) {
  const std::size_t n = p.parent.size();
  if (n == 0 || p.lambda.size() != n) {
    throw std::invalid_argument("from_pointer_hierarchy: malformed input");
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(p.lambda[i])) order.push_back(i);
  }
  if (order.size() != n - 1) {
    throw std::invalid_argument(
        "from_pointer_hierarchy: expected exactly one infinite lambda");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p.lambda[a] != p.lambda[b]) return p.lambda[a] < p.lambda[b];
    return a < b;
  });
  MergeHistory h;
  h.n = n;
  h.merges.reserve(n - 1);
  detail::ClusterTracker uf(n);
  for (std::size_t i : order) {
    h.merges.push_back(uf.merge_points(i, p.parent[i], p.lambda[i]));
  }
  return h;
}

}  // namespace clusterkit
