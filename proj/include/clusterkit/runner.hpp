#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/builder.hpp"
#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/evaluation.hpp"
#include "clusterkit/extraction.hpp"
#include "clusterkit/hac.hpp"
#include "clusterkit/initialization.hpp"
#include "clusterkit/io.hpp"
#include "clusterkit/kmeans.hpp"
#include "clusterkit/kmedoids.hpp"
#include "clusterkit/random.hpp"

namespace clusterkit {

/// Text produced by a run (eval comment lines followed by one assignment
/// row per clustering) plus any non-fatal warnings for stderr.
struct RunOutcome {
  std::string output;
  std::vector<std::string> warnings;
};

namespace detail {

/// Per-k seed when one invocation covers a k range: mixes k into the
/// base seed with a splitmix step so the streams are unrelated, while a
/// singleton k uses the base seed untouched.
inline std::uint64_t fork_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t s = base + k * 0x9E3779B97F4A7C15ULL;
  return splitmix64_next(s);
}

inline std::string format_eval_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t param_u64(const std::map<std::string, std::string>& p,
                               const std::string& key) {
  long long v = 0;
  parse_full_int64(p.at(key), v);
  return static_cast<std::uint64_t>(v);
}

inline double param_real(const std::map<std::string, std::string>& p,
                         const std::string& key) {
  double v = 0.0;
  parse_full_double(p.at(key), v);
  return v;
}

inline bool param_bool(const std::map<std::string, std::string>& p,
                       const std::string& key) {
  return p.at(key) == "true" || p.at(key) == "1";
}

}  // namespace detail

/// Executes a resolved RunSpec against a dataset. Each produced
/// clustering contributes one assignment line, prefixed with "k=<v>"
/// when the run covers several k values, and preceded by one
/// "# eval <name> <value>" line per requested evaluation (NA plus a
/// warning when the measure is undefined for that clustering).
inline RunOutcome execute_run(const RunSpec& spec, const Dataset& data,
                              const std::vector<std::string>& evals = {}) {
  for (const auto& name : evals) {
    if (name != "sse" && name != "silhouette" &&
        name != "simplified_silhouette" && name != "davies_bouldin" &&
        name != "variance_ratio") {
      throw std::invalid_argument(
          "unknown evaluation \"" + name +
          "\"; valid: sse, silhouette, simplified_silhouette, "
          "davies_bouldin, variance_ratio");
    }
  }

  RunOutcome out;
  const auto& P = spec.params;
  const std::uint64_t seed = detail::param_u64(P, "seed");

  // Silhouette scores pairwise euclidean distances regardless of the
  // algorithm's own metric; built once on first use.
  std::optional<CondensedDistanceMatrix> euclid;
  const auto euclid_matrix = [&]() -> const CondensedDistanceMatrix& {
    if (!euclid) euclid = condensed_matrix(data, Metric::kEuclidean);
    return *euclid;
  };

  const auto emit = [&](const Clustering& c, const std::string& label) {
    for (const auto& name : evals) {
      std::string value;
      try {
        double v = 0.0;
        if (name == "sse") {
          v = sse(data, c);
        } else if (name == "silhouette") {
          v = silhouette(euclid_matrix(), c).first;
        } else if (name == "simplified_silhouette") {
          v = simplified_silhouette(data, c);
        } else if (name == "davies_bouldin") {
          v = davies_bouldin(data, c);
        } else {
          v = variance_ratio(data, c);
        }
        value = detail::format_eval_value(v);
      } catch (const std::exception& e) {
        value = "NA";
        out.warnings.push_back("evaluation " + name +
                               (label.empty() ? "" : " (" + label + ")") +
                               " failed: " + e.what());
      }
      out.output += "# eval " + name + " " + value + "\n";
    }
    out.output += write_assignment(c, label);
  };

  const bool hac = spec.algorithm == AlgorithmKind::kAgnes ||
                   spec.algorithm == AlgorithmKind::kAnderberg ||
                   spec.algorithm == AlgorithmKind::kNNChain ||
                   spec.algorithm == AlgorithmKind::kSlink ||
                   spec.algorithm == AlgorithmKind::kMiniMax;

  if (hac) {
    const Metric metric = metric_from_name(P.at("hac.metric"));
    const CondensedDistanceMatrix m = condensed_matrix(data, metric);
    if (metric == Metric::kEuclidean) euclid = m;

    MergeHistory h;
    if (spec.algorithm == AlgorithmKind::kSlink) {
      h = run_slink(m);
    } else if (spec.algorithm == AlgorithmKind::kMiniMax) {
      const std::string& engine = P.at("hac.engine");
      h = run_minimax(m, engine == "matrix"    ? MiniMaxEngine::kMatrix
                         : engine == "anderberg" ? MiniMaxEngine::kAnderberg
                                                 : MiniMaxEngine::kNNChain);
    } else {
      LinkageScheme scheme;
      scheme.kind = linkage_from_name(P.at("hac.linkage"));
      if (P.count("hac.beta") != 0) scheme.beta = detail::param_real(P, "hac.beta");
      if (spec.algorithm == AlgorithmKind::kAgnes) {
        h = run_agnes(m, scheme);
      } else if (spec.algorithm == AlgorithmKind::kAnderberg) {
        h = run_anderberg(m, scheme);
      } else {
        h = run_nnchain(m, scheme);
      }
    }

    if (P.count("hac.cut.height") != 0) {
      emit(cut_by_height(h, detail::param_real(P, "hac.cut.height")), "");
    } else {
      const auto ks = parse_int_range(P.at("hac.cut.k"));
      const bool multi = ks.size() > 1;
      for (const std::uint64_t kv : ks) {
        const auto k = static_cast<std::size_t>(kv);
        const Clustering c =
            P.count("hac.cut.minsize") != 0
                ? extract_with_noise(
                      h, k,
                      static_cast<std::size_t>(
                          detail::param_u64(P, "hac.cut.minsize")))
                : cut_by_k(h, k);
        emit(c, multi ? "k=" + std::to_string(kv) : "");
      }
    }
    return out;
  }

  if (spec.algorithm == AlgorithmKind::kKMeans) {
    const auto ks = parse_int_range(P.at("kmeans.k"));
    const bool multi = ks.size() > 1;
    const std::string& variant_name = P.at("kmeans.variant");
    const bool minusminus = variant_name == "minusminus";
    const InitStrategy strat{init_kind_from_name(P.at("kmeans.init")), {}};
    const std::uint64_t maxiter = detail::param_u64(P, "kmeans.maxiter");
    for (const std::uint64_t kv : ks) {
      const auto k = static_cast<std::size_t>(kv);
      RngState rng(multi ? detail::fork_seed(seed, kv) : seed);
      InitResult init = initialize(strat, data, k, rng);
      for (const auto& w : init.warnings) out.warnings.push_back(w);
      const KMeansResult r =
          minusminus
              ? run_kmeans_minusminus(data, k, init.centers,
                                      detail::param_real(P, "kmeans.rate"),
                                      maxiter)
              : run_kmeans(data, k, kmeans_variant_from_name(variant_name),
                           init.centers, maxiter);
      emit(r.clustering, multi ? "k=" + std::to_string(kv) : "");
    }
    return out;
  }

  if (spec.algorithm == AlgorithmKind::kKMedoids) {
    const Metric metric = metric_from_name(P.at("kmedoids.metric"));
    const CondensedDistanceMatrix m = condensed_matrix(data, metric);
    if (metric == Metric::kEuclidean) euclid = m;
    const auto ks = parse_int_range(P.at("kmedoids.k"));
    const bool multi = ks.size() > 1;
    const std::string& algo = P.at("kmedoids.algo");
    const InitStrategy strat{init_kind_from_name(P.at("kmedoids.init")), {}};
    const std::uint64_t maxiter = detail::param_u64(P, "kmedoids.maxiter");
    for (const std::uint64_t kv : ks) {
      const auto k = static_cast<std::size_t>(kv);
      RngState rng(multi ? detail::fork_seed(seed, kv) : seed);
      InitResult init = initialize(strat, data, k, rng, metric);
      for (const auto& w : init.warnings) out.warnings.push_back(w);
      MedoidResult r;
      if (algo == "park") {
        r = run_park(m, k, init.indices, maxiter);
      } else {
        SwapOptions opt;
        opt.algorithm = swap_algorithm_from_name(algo);
        opt.maxiter = maxiter;
        if (P.count("kmedoids.tolerance") != 0) {
          opt.tolerance = detail::param_real(P, "kmedoids.tolerance");
        }
        r = pam_swap(m, init.indices, opt);
      }
      emit(r.clustering, multi ? "k=" + std::to_string(kv) : "");
    }
    return out;
  }

  if (spec.algorithm == AlgorithmKind::kClara) {
    ClaraConfig cfg;
    cfg.numsamples = static_cast<std::size_t>(detail::param_u64(P, "clara.numsamples"));
    cfg.samplesize = P.at("clara.samplesize") == "auto"
                         ? 0
                         : static_cast<std::size_t>(
                               detail::param_u64(P, "clara.samplesize"));
    cfg.fast = detail::param_bool(P, "clara.fast");
    cfg.keep_best = detail::param_bool(P, "clara.keep_best");
    cfg.metric = metric_from_name(P.at("clara.metric"));
    const auto ks = parse_int_range(P.at("clara.k"));
    const bool multi = ks.size() > 1;
    for (const std::uint64_t kv : ks) {
      const auto k = static_cast<std::size_t>(kv);
      const MedoidResult r =
          run_clara(data, k, cfg, multi ? detail::fork_seed(seed, kv) : seed);
      emit(r.clustering, multi ? "k=" + std::to_string(kv) : "");
    }
    return out;
  }

  // clarans
  const Metric metric = metric_from_name(P.at("clarans.metric"));
  const CondensedDistanceMatrix m = condensed_matrix(data, metric);
  if (metric == Metric::kEuclidean) euclid = m;
  ClaransConfig cfg;
  cfg.numlocal = static_cast<std::size_t>(detail::param_u64(P, "clarans.numlocal"));
  const double neighbor_value = detail::param_real(P, "clarans.maxneighbor");
  if (neighbor_value == 0.0) {
    cfg.maxneighbor = 0;
  } else if (neighbor_value < 1.0) {
    cfg.maxneighbor_fraction = neighbor_value;
  } else {
    cfg.maxneighbor = static_cast<std::uint64_t>(neighbor_value);
  }
  cfg.fast = detail::param_bool(P, "clarans.fast");
  const auto ks = parse_int_range(P.at("clarans.k"));
  const bool multi = ks.size() > 1;
  for (const std::uint64_t kv : ks) {
    const auto k = static_cast<std::size_t>(kv);
    const MedoidResult r =
        run_clarans(m, k, cfg, multi ? detail::fork_seed(seed, kv) : seed);
    emit(r.clustering, multi ? "k=" + std::to_string(kv) : "");
  }
  return out;
}

}  // namespace clusterkit
