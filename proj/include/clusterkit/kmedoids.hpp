#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/clustering.hpp"
#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/metric.hpp"
#include "clusterkit/random.hpp"

namespace clusterkit {

enum class SwapAlgorithm { kPam, kReynolds, kFastPam1, kFastPam };

inline const char* swap_algorithm_name(SwapAlgorithm a) {
  switch (a) {
    case SwapAlgorithm::kPam: return "pam";
    case SwapAlgorithm::kReynolds: return "reynolds";
    case SwapAlgorithm::kFastPam1: return "fastpam1";
    case SwapAlgorithm::kFastPam: return "fastpam";
  }
  return "?";
}

inline SwapAlgorithm swap_algorithm_from_name(const std::string& name) {
  if (name == "pam") return SwapAlgorithm::kPam;
  if (name == "reynolds") return SwapAlgorithm::kReynolds;
  if (name == "fastpam1") return SwapAlgorithm::kFastPam1;
  if (name == "fastpam") return SwapAlgorithm::kFastPam;
  throw std::invalid_argument("unknown swap algorithm \"" + name + "\"");
}

struct MedoidResult {
  Clustering clustering;
  std::vector<std::size_t> medoids;  // slot -> point index
  double td = 0.0;                   // sum of distances to nearest medoid
  std::uint64_t swaps_performed = 0;
  std::uint64_t iterations = 0;       // scan passes (or rounds for wrappers)
  std::uint64_t distance_computations = 0;
  std::uint64_t swap_evaluations = 0;  // candidate swaps scored
};

namespace detail {

/// Medoid set plus per-point nearest/second-nearest caches. Every matrix
/// access in the hot paths goes through dist() so the shared counter
/// stays honest; the optional validator rechecks the caches from scratch
/// after each swap (reads outside the counter, debug only).
struct MedoidState {
  const CondensedDistanceMatrix& m;
  std::size_t n;
  std::size_t k;
  std::vector<std::size_t> medoids;
  std::vector<char> is_med;
  std::vector<std::size_t> near_pos, sec_pos;  // medoid slots; k = no second
  std::vector<double> near_d, sec_d;
  std::uint64_t* reads;
  bool validate;

  MedoidState(const CondensedDistanceMatrix& mat, std::vector<std::size_t> meds,
              std::uint64_t* read_counter, bool validate_caches)
      : m(mat), n(mat.size()), k(meds.size()), medoids(std::move(meds)),
        is_med(n, 0), near_pos(n, 0), sec_pos(n, 0), near_d(n, 0.0),
        sec_d(n, 0.0), reads(read_counter), validate(validate_caches) {
    if (k == 0 || k > n) {
      throw std::invalid_argument("kmedoids: k must lie in [1, n]");
    }
    for (std::size_t p : medoids) {
      if (p >= n) {
        throw std::invalid_argument("kmedoids: medoid index out of range");
      }
      if (is_med[p]) {
        throw std::invalid_argument("kmedoids: duplicate medoid");
      }
      is_med[p] = 1;
    }
    recompute_all();
  }

  double dist(std::size_t a, std::size_t b) {
    ++(*reads);
    return a == b ? 0.0 : m.at(a, b);
  }

  void recompute_point(std::size_t j) {
    std::size_t bp = 0;
    double bd = dist(j, medoids[0]);
    std::size_t sp = k;  // sentinel: no second (k == 1)
    double sd = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 1; pos < k; ++pos) {
      const double dd = dist(j, medoids[pos]);
      if (dd < bd) {
        sp = bp;
        sd = bd;
        bp = pos;
        bd = dd;
      } else if (dd < sd) {
        sp = pos;
        sd = dd;
      }
    }
    near_pos[j] = bp;
    near_d[j] = bd;
    sec_pos[j] = sp;
    sec_d[j] = sd;
  }

  void recompute_all() {
    for (std::size_t j = 0; j < n; ++j) recompute_point(j);
  }

  void reset_medoids(const std::vector<std::size_t>& meds) {
    std::fill(is_med.begin(), is_med.end(), char{0});
    medoids = meds;
    for (std::size_t p : medoids) is_med[p] = 1;
    recompute_all();
  }

  double td() const {
    double acc = 0.0;
    for (double v : near_d) acc += v;
    return acc;
  }

  /// Replaces the medoid in one slot and updates the caches point by
  /// point; falls back to a full k-scan only when the removed medoid was
  /// the second-nearest and the replacement is farther.
  void apply_swap(std::size_t pos, std::size_t x) {
    is_med[medoids[pos]] = 0;
    is_med[x] = 1;
    medoids[pos] = x;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = dist(j, x);
      if (near_pos[j] == pos) {
        if (dx < sec_d[j] || (dx == sec_d[j] && pos < sec_pos[j])) {
          near_d[j] = dx;  // slot keeps ownership
        } else if (dx == sec_d[j]) {
          near_pos[j] = sec_pos[j];
          near_d[j] = sec_d[j];
          sec_pos[j] = pos;
          sec_d[j] = dx;
        } else {
          recompute_point(j);
        }
      } else if (dx < near_d[j] || (dx == near_d[j] && pos < near_pos[j])) {
        // Covers sec_pos[j] == pos too: the old nearest becomes second.
        sec_pos[j] = near_pos[j];
        sec_d[j] = near_d[j];
        near_pos[j] = pos;
        near_d[j] = dx;
      } else if (sec_pos[j] == pos) {
        if (dx <= sec_d[j]) {
          sec_d[j] = dx;  // any third medoid is at least the old second
        } else {
          recompute_point(j);
        }
      } else if (dx < sec_d[j] || (dx == sec_d[j] && pos < sec_pos[j])) {
        sec_pos[j] = pos;
        sec_d[j] = dx;
      }
    }
    if (validate) validate_caches();
  }

  /// Debug cross-check: scratch recomputation must agree with the
  /// incremental caches. Bypasses the read counter.
  void validate_caches() const {
    for (std::size_t j = 0; j < n; ++j) {
      double bd = std::numeric_limits<double>::infinity();
      double sd = std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos < k; ++pos) {
        const double dd = j == medoids[pos] ? 0.0 : m.at(j, medoids[pos]);
        if (dd < bd) {
          sd = bd;
          bd = dd;
        } else if (dd < sd) {
          sd = dd;
        }
      }
      const double tol = 1e-9 * (1.0 + std::fabs(bd));
      if (std::fabs(near_d[j] - bd) > tol ||
          (k > 1 && std::fabs(sec_d[j] - sd) > tol)) {
        throw std::logic_error("kmedoids: incremental caches diverged");
      }
    }
  }
};

/// Change in total deviation if the medoid in slot pos is replaced by
/// point x, split into a slot-independent part and the correction for
/// points owned by the slot. fastpam1 accumulates exactly these terms in
/// the same order, so both algorithms score a swap bitwise identically.
inline double swap_delta(MedoidState& st, std::size_t pos, std::size_t x) {
  double shared = 0.0;
  double corr = 0.0;
  for (std::size_t j = 0; j < st.n; ++j) {
    const double dx = st.dist(j, x);
    const double s = std::min(dx - st.near_d[j], 0.0);
    shared += s;
    if (st.near_pos[j] == pos) {
      corr += std::min(dx, st.sec_d[j]) - st.near_d[j] - s;
    }
  }
  return shared + corr;
}

/// Tracks the best candidate swap under the shared tie rule:
/// (delta, outgoing medoid point index, candidate point index).
struct BestSwap {
  bool found = false;
  double delta = 0.0;
  std::size_t m_pt = 0;
  std::size_t x = 0;
  std::size_t pos = 0;

  void offer(double d, std::size_t mpt, std::size_t cand, std::size_t slot) {
    if (!found || d < delta ||
        (d == delta && (mpt < m_pt || (mpt == m_pt && cand < x)))) {
      found = true;
      delta = d;
      m_pt = mpt;
      x = cand;
      pos = slot;
    }
  }
};

inline MedoidResult make_medoid_result(const MedoidState& st,
                                       std::uint64_t iterations,
                                       std::uint64_t swaps,
                                       std::uint64_t evals,
                                       std::uint64_t reads) {
  MedoidResult r;
  r.medoids = st.medoids;
  r.clustering.assignment.resize(st.n);
  for (std::size_t j = 0; j < st.n; ++j) {
    r.clustering.assignment[j] = static_cast<int>(st.near_pos[j]);
  }
  r.clustering.num_clusters = st.k;
  r.clustering.medoid_prototypes = st.medoids;
  r.td = st.td();
  r.swaps_performed = swaps;
  r.iterations = iterations;
  r.distance_computations = reads;
  r.swap_evaluations = evals;
  r.clustering.stats.iterations = iterations;
  r.clustering.stats.distance_computations = reads;
  return r;
}

}  // namespace detail

/// Greedy medoid seeding: the first medoid minimizes the total distance
/// to all points; each further one maximizes the drop in total
/// deviation. Ties pick the lowest point index.
inline MedoidResult pam_build(const CondensedDistanceMatrix& m, std::size_t k) {
  const std::size_t n = m.size();
  if (k == 0 || k > n) {
    throw std::invalid_argument("pam_build: k must lie in [1, n]");
  }
  std::uint64_t reads = 0;
  auto dd = [&](std::size_t a, std::size_t b) {
    ++reads;
    return a == b ? 0.0 : m.at(a, b);
  };

  std::size_t first = 0;
  double first_sum = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += dd(j, c);
    if (sum < first_sum) {
      first_sum = sum;
      first = c;
    }
  }

  std::vector<std::size_t> medoids{first};
  std::vector<char> chosen(n, 0);
  chosen[first] = 1;
  std::vector<double> near(n);
  for (std::size_t j = 0; j < n; ++j) near[j] = dd(j, first);

  while (medoids.size() < k) {
    std::size_t best_c = n;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        gain += std::max(near[j] - dd(j, c), 0.0);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    medoids.push_back(best_c);
    chosen[best_c] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      near[j] = std::min(near[j], dd(j, best_c));
    }
  }

  detail::MedoidState st(m, medoids, &reads, false);
  return detail::make_medoid_result(st, 0, 0, 0, reads);
}

struct SwapOptions {
  SwapAlgorithm algorithm = SwapAlgorithm::kFastPam;
  std::uint64_t maxiter = 0;  // scan passes; 0 = until no improving swap
  double tolerance = 1.0;     // fastpam eager-acceptance slack in [0, 1]
  bool validate_caches = false;
};

/// Iterative medoid improvement from a starting set. pam and reynolds
/// scan every (medoid, candidate) pair per pass and apply the single
/// best strictly improving swap; fastpam1 scores all slots per candidate
/// in one scan and accepts the same swap sequence as pam; fastpam
/// additionally executes further slots' best swaps within the pass when
/// their recomputed delta stays within the tolerance rule
/// delta <= -(1 - tolerance) * |best delta|. Every applied swap must
/// actually lower the cached deviation; one scored negative by rounding
/// alone is undone so the search cannot oscillate.
inline MedoidResult pam_swap(const CondensedDistanceMatrix& m,
                             const std::vector<std::size_t>& start,
                             const SwapOptions& opt = {}) {
  if (!(opt.tolerance >= 0.0 && opt.tolerance <= 1.0)) {
    throw std::invalid_argument("pam_swap: tolerance must lie in [0, 1]");
  }
  std::uint64_t reads = 0, evals = 0, swaps = 0, passes = 0;
  detail::MedoidState st(m, start, &reads, opt.validate_caches);
  const std::size_t n = st.n;
  const std::size_t k = st.k;

  const bool pairwise = opt.algorithm == SwapAlgorithm::kPam ||
                        opt.algorithm == SwapAlgorithm::kReynolds;
  if (pairwise) {
    // The removal-loss split needs a finite second-nearest, so k == 1
    // degenerates to the plain per-pair formula (same value).
    const bool reynolds = opt.algorithm == SwapAlgorithm::kReynolds && k > 1;
    for (;;) {
      ++passes;
      std::vector<double> removal_loss;
      if (reynolds) {
        removal_loss.assign(k, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          removal_loss[st.near_pos[j]] += st.sec_d[j] - st.near_d[j];
        }
      }
      detail::BestSwap best;
      for (std::size_t pos = 0; pos < k; ++pos) {
        for (std::size_t x = 0; x < n; ++x) {
          if (st.is_med[x]) continue;
          ++evals;
          double delta;
          if (reynolds) {
            delta = removal_loss[pos];
            for (std::size_t j = 0; j < n; ++j) {
              const double dx = st.dist(j, x);
              if (st.near_pos[j] == pos) {
                delta += std::min(dx, st.sec_d[j]) - st.sec_d[j];
              } else {
                delta += std::min(dx - st.near_d[j], 0.0);
              }
            }
          } else {
            delta = detail::swap_delta(st, pos, x);
          }
          best.offer(delta, st.medoids[pos], x, pos);
        }
      }
      if (!best.found || !(best.delta < 0.0)) break;
      const double before = st.td();
      const std::size_t old_med = st.medoids[best.pos];
      st.apply_swap(best.pos, best.x);
      if (!(st.td() < before)) {
        // Rounding in the accumulated delta can fabricate a tiny negative
        // score for a swap with no real gain; left unchecked such a pair
        // alternates forever. Undo and treat the pass as converged.
        st.apply_swap(best.pos, old_med);
        break;
      }
      ++swaps;
      if (opt.maxiter != 0 && passes == opt.maxiter) break;
    }
  } else if (opt.algorithm == SwapAlgorithm::kFastPam1) {
    std::vector<double> corr(k);
    for (;;) {
      ++passes;
      detail::BestSwap best;
      for (std::size_t x = 0; x < n; ++x) {
        if (st.is_med[x]) continue;
        ++evals;
        double shared = 0.0;
        std::fill(corr.begin(), corr.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          const double dx = st.dist(j, x);
          const double s = std::min(dx - st.near_d[j], 0.0);
          shared += s;
          corr[st.near_pos[j]] += std::min(dx, st.sec_d[j]) - st.near_d[j] - s;
        }
        for (std::size_t pos = 0; pos < k; ++pos) {
          best.offer(shared + corr[pos], st.medoids[pos], x, pos);
        }
      }
      if (!best.found || !(best.delta < 0.0)) break;
      const double before = st.td();
      const std::size_t old_med = st.medoids[best.pos];
      st.apply_swap(best.pos, best.x);
      if (!(st.td() < before)) {
        // Same rounding guard as the pairwise scan, kept identical so the
        // pam / fastpam1 swap sequences stay bitwise equal.
        st.apply_swap(best.pos, old_med);
        break;
      }
      ++swaps;
      if (opt.maxiter != 0 && passes == opt.maxiter) break;
    }
  } else {  // fastpam: eager multi-swap passes
    std::vector<double> corr(k);
    for (;;) {
      ++passes;
      std::vector<double> slot_delta(k, std::numeric_limits<double>::infinity());
      std::vector<std::size_t> slot_cand(k, n);
      detail::BestSwap best;
      for (std::size_t x = 0; x < n; ++x) {
        if (st.is_med[x]) continue;
        ++evals;
        double shared = 0.0;
        std::fill(corr.begin(), corr.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          const double dx = st.dist(j, x);
          const double s = std::min(dx - st.near_d[j], 0.0);
          shared += s;
          corr[st.near_pos[j]] += std::min(dx, st.sec_d[j]) - st.near_d[j] - s;
        }
        for (std::size_t pos = 0; pos < k; ++pos) {
          const double delta = shared + corr[pos];
          if (delta < slot_delta[pos]) {
            slot_delta[pos] = delta;
            slot_cand[pos] = x;
          }
          best.offer(delta, st.medoids[pos], x, pos);
        }
      }
      if (!best.found || !(best.delta < 0.0)) break;
      const double pass_best = -best.delta;

      std::vector<std::size_t> order(k);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (slot_delta[a] != slot_delta[b]) return slot_delta[a] < slot_delta[b];
        return a < b;
      });
      bool stalled = false;
      bool kept = false;
      for (std::size_t pos : order) {
        if (!(slot_delta[pos] < 0.0)) break;
        const std::size_t x = slot_cand[pos];
        if (st.is_med[x]) continue;  // claimed by an earlier swap this pass
        ++evals;
        const double delta = detail::swap_delta(st, pos, x);
        if (delta < 0.0 && delta <= -(1.0 - opt.tolerance) * pass_best) {
          const double before = st.td();
          const std::size_t old_med = st.medoids[pos];
          st.apply_swap(pos, x);
          if (!(st.td() < before)) {
            // Rounding guard, see the pairwise scan. A phantom best swap
            // means the pass converged; a phantom extra swap is dropped.
            st.apply_swap(pos, old_med);
            if (!kept) {
              stalled = true;
              break;
            }
            continue;
          }
          kept = true;
          ++swaps;
        }
      }
      if (stalled) break;
      if (opt.maxiter != 0 && passes == opt.maxiter) break;
    }
  }
  return detail::make_medoid_result(st, passes, swaps, evals, reads);
}

inline MedoidResult pam_swap(const CondensedDistanceMatrix& m,
                             const MedoidResult& start,
                             const SwapOptions& opt = {}) {
  return pam_swap(m, start.medoids, opt);
}

/// Bulk EM-style refinement: per pass, each cluster's medoid moves to
/// the member with the smallest within-cluster distance sum (ties to the
/// lowest point index), then points are reassigned. Stops when no medoid
/// moves or after maxiter passes (0 = unbounded).
inline MedoidResult run_park(const CondensedDistanceMatrix& m, std::size_t k,
                             const std::vector<std::size_t>& start,
                             std::uint64_t maxiter = 0) {
  if (start.size() != k) {
    throw std::invalid_argument("run_park: start medoid count must equal k");
  }
  std::uint64_t reads = 0, swaps = 0, passes = 0;
  detail::MedoidState st(m, start, &reads, false);
  for (;;) {
    ++passes;
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t j = 0; j < st.n; ++j) {
      members[st.near_pos[j]].push_back(j);
    }
    std::vector<std::size_t> next = st.medoids;
    bool changed = false;
    for (std::size_t pos = 0; pos < k; ++pos) {
      const auto& mem = members[pos];
      if (mem.empty()) continue;  // cluster lost all points, keep medoid
      std::size_t best_pt = mem.front();
      double best_sum = std::numeric_limits<double>::infinity();
      for (std::size_t c : mem) {
        double sum = 0.0;
        for (std::size_t j : mem) sum += st.dist(c, j);
        if (sum < best_sum) {
          best_sum = sum;
          best_pt = c;
        }
      }
      if (best_pt != next[pos]) {
        next[pos] = best_pt;
        changed = true;
        ++swaps;
      }
    }
    if (!changed) break;
    st.reset_medoids(next);
    if (maxiter != 0 && passes == maxiter) break;
  }
  return detail::make_medoid_result(st, passes, swaps, 0, reads);
}

struct ClaraConfig {
  std::size_t numsamples = 5;
  std::size_t samplesize = 0;  // 0 -> 40 + 2k (fast: 80 + 4k), capped at n
  bool fast = false;           // fastpam swaps instead of classic pam
  bool keep_best = true;       // carry best medoids into later samples
  Metric metric = Metric::kEuclidean;
};

/// Sampling wrapper: runs BUILD + swap on numsamples subsamples and
/// keeps the medoid set with the best total deviation over the full
/// data. Later samples retain the incumbent medoids when keep_best is
/// set. Counters aggregate over all rounds.
inline MedoidResult run_clara(const Dataset& data, std::size_t k,
                              ClaraConfig cfg, std::uint64_t seed) {
  const std::size_t n = data.size();
  const std::size_t d = data.dimensionality();
  if (k == 0 || k > n) {
    throw std::invalid_argument("run_clara: k must lie in [1, n]");
  }
  if (cfg.numsamples == 0) {
    throw std::invalid_argument("run_clara: numsamples must be at least 1");
  }
  std::size_t ss = cfg.samplesize;
  if (ss == 0) ss = cfg.fast ? 80 + 4 * k : 40 + 2 * k;
  ss = std::min(ss, n);
  if (ss < k) {
    throw std::invalid_argument("run_clara: samplesize must be at least k");
  }

  RngState rng(seed);
  std::uint64_t comps = 0, swaps = 0, evals = 0;
  double best_td = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_meds;

  for (std::size_t round = 0; round < cfg.numsamples; ++round) {
    const std::vector<std::size_t> fresh = sample_k(rng, n, ss);
    std::vector<std::size_t> sample;
    if (cfg.keep_best && !best_meds.empty()) {
      sample = best_meds;
      std::vector<char> used(n, 0);
      for (std::size_t p : sample) used[p] = 1;
      for (std::size_t f : fresh) {
        if (sample.size() == ss) break;
        if (!used[f]) {
          used[f] = 1;
          sample.push_back(f);
        }
      }
    } else {
      sample = fresh;
    }

    std::vector<double> entries;
    entries.reserve(ss * (ss - 1) / 2);
    for (std::size_t a = 0; a + 1 < ss; ++a) {
      for (std::size_t b = a + 1; b < ss; ++b) {
        entries.push_back(
            distance(data.row(sample[a]), data.row(sample[b]), d, cfg.metric));
        ++comps;
      }
    }
    const CondensedDistanceMatrix sub(ss, std::move(entries));

    const MedoidResult built = pam_build(sub, k);
    SwapOptions so;
    so.algorithm = cfg.fast ? SwapAlgorithm::kFastPam : SwapAlgorithm::kPam;
    const MedoidResult refined = pam_swap(sub, built.medoids, so);
    comps += built.distance_computations + refined.distance_computations;
    swaps += refined.swaps_performed;
    evals += refined.swap_evaluations;

    std::vector<std::size_t> global(k);
    for (std::size_t pos = 0; pos < k; ++pos) {
      global[pos] = sample[refined.medoids[pos]];
    }
    double td = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos < k; ++pos) {
        const double dd = distance(data.row(i), data.row(global[pos]), d, cfg.metric);
        ++comps;
        if (dd < bd) bd = dd;
      }
      td += bd;
    }
    if (td < best_td) {
      best_td = td;
      best_meds = std::move(global);
    }
  }

  MedoidResult r;
  r.medoids = best_meds;
  r.clustering.assignment.resize(n);
  r.td = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int bp = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos < k; ++pos) {
      const double dd = distance(data.row(i), data.row(best_meds[pos]), d, cfg.metric);
      ++comps;
      if (dd < bd) {
        bd = dd;
        bp = static_cast<int>(pos);
      }
    }
    r.clustering.assignment[i] = bp;
    r.td += bd;
  }
  r.clustering.num_clusters = k;
  r.clustering.medoid_prototypes = best_meds;
  r.swaps_performed = swaps;
  r.iterations = cfg.numsamples;
  r.distance_computations = comps;
  r.swap_evaluations = evals;
  r.clustering.stats.iterations = cfg.numsamples;
  r.clustering.stats.distance_computations = comps;
  return r;
}

struct ClaransConfig {
  std::size_t numlocal = 2;
  /// Explicit neighbor budget; 0 means no exploration. When unset the
  /// fraction below applies with a floor of 250.
  std::optional<std::uint64_t> maxneighbor;
  double maxneighbor_fraction = 0.0125;
  bool fast = false;  // score all k slots per sampled candidate
  bool validate_caches = false;
};

/// Randomized search: numlocal restarts from random medoid sets, each
/// exploring random single swaps until maxneighbor consecutive samples
/// fail to improve (the counter resets on every accepted swap). fast
/// scores every slot for each sampled candidate instead of one random
/// slot. The best restart wins.
inline MedoidResult run_clarans(const CondensedDistanceMatrix& m, std::size_t k,
                                const ClaransConfig& cfg, std::uint64_t seed) {
  const std::size_t n = m.size();
  if (k == 0 || k > n) {
    throw std::invalid_argument("run_clarans: k must lie in [1, n]");
  }
  if (cfg.numlocal == 0) {
    throw std::invalid_argument("run_clarans: numlocal must be at least 1");
  }
  std::uint64_t neighbors;
  if (cfg.maxneighbor) {
    neighbors = *cfg.maxneighbor;
  } else {
    const double frac = cfg.maxneighbor_fraction *
                        static_cast<double>(k) * static_cast<double>(n - k);
    neighbors = std::max<std::uint64_t>(
        250, static_cast<std::uint64_t>(std::ceil(frac)));
  }

  RngState rng(seed);
  std::uint64_t reads = 0, evals = 0, swaps = 0;
  double best_td = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_meds;
  std::vector<double> corr(k);

  for (std::size_t local = 0; local < cfg.numlocal; ++local) {
    detail::MedoidState st(m, sample_k(rng, n, k), &reads, cfg.validate_caches);
    if (k < n) {
      std::uint64_t attempts = 0;
      while (attempts < neighbors) {
        std::size_t x;
        do {
          x = static_cast<std::size_t>(rng_index(rng, n));
        } while (st.is_med[x]);
        ++attempts;
        ++evals;
        if (!cfg.fast) {
          const std::size_t pos = static_cast<std::size_t>(rng_index(rng, k));
          const double delta = detail::swap_delta(st, pos, x);
          if (delta < 0.0) {
            st.apply_swap(pos, x);
            ++swaps;
            attempts = 0;
          }
        } else {
          double shared = 0.0;
          std::fill(corr.begin(), corr.end(), 0.0);
          for (std::size_t j = 0; j < st.n; ++j) {
            const double dx = st.dist(j, x);
            const double s = std::min(dx - st.near_d[j], 0.0);
            shared += s;
            corr[st.near_pos[j]] += std::min(dx, st.sec_d[j]) - st.near_d[j] - s;
          }
          detail::BestSwap best;
          for (std::size_t pos = 0; pos < k; ++pos) {
            best.offer(shared + corr[pos], st.medoids[pos], x, pos);
          }
          if (best.found && best.delta < 0.0) {
            st.apply_swap(best.pos, best.x);
            ++swaps;
            attempts = 0;
          }
        }
      }
    }
    const double td = st.td();
    if (td < best_td) {
      best_td = td;
      best_meds = st.medoids;
    }
  }

  detail::MedoidState fin(m, best_meds, &reads, false);
  return detail::make_medoid_result(fin, cfg.numlocal, swaps, evals, reads);
}

}  // namespace clusterkit
