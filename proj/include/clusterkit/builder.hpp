#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterkit/initialization.hpp"
#include "clusterkit/io.hpp"
#include "clusterkit/kmeans.hpp"
#include "clusterkit/kmedoids.hpp"
#include "clusterkit/linkage.hpp"
#include "clusterkit/metric.hpp"

namespace clusterkit {

/// Ordered key/value configuration, as collected from a command line.
/// Later occurrences of a key override earlier ones (with a warning at
/// resolution time).
struct ParamSet {
  std::vector<std::pair<std::string, std::string>> items;

  void add(std::string key, std::string value) {
    items.emplace_back(std::move(key), std::move(value));
  }
};

enum class AlgorithmKind {
  kAgnes,
  kAnderberg,
  kNNChain,
  kSlink,
  kMiniMax,
  kKMeans,
  kKMedoids,
  kClara,
  kClarans,
};

inline const char* algorithm_kind_name(AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::kAgnes: return "agnes";
    case AlgorithmKind::kAnderberg: return "anderberg";
    case AlgorithmKind::kNNChain: return "nnchain";
    case AlgorithmKind::kSlink: return "slink";
    case AlgorithmKind::kMiniMax: return "minimax";
    case AlgorithmKind::kKMeans: return "kmeans";
    case AlgorithmKind::kKMedoids: return "kmedoids";
    case AlgorithmKind::kClara: return "clara";
    case AlgorithmKind::kClarans: return "clarans";
  }
  return "?";
}

inline AlgorithmKind algorithm_kind_from_name(const std::string& name) {
  if (name == "agnes") return AlgorithmKind::kAgnes;
  if (name == "anderberg") return AlgorithmKind::kAnderberg;
  if (name == "nnchain") return AlgorithmKind::kNNChain;
  if (name == "slink") return AlgorithmKind::kSlink;
  if (name == "minimax") return AlgorithmKind::kMiniMax;
  if (name == "kmeans") return AlgorithmKind::kKMeans;
  if (name == "kmedoids") return AlgorithmKind::kKMedoids;
  if (name == "clara") return AlgorithmKind::kClara;
  if (name == "clarans") return AlgorithmKind::kClarans;
  throw std::invalid_argument(
      "unknown algorithm \"" + name +
      "\"; valid: agnes, anderberg, nnchain, slink, minimax, kmeans, "
      "kmedoids, clara, clarans");
}

/// Fully resolved run description: every schema key is present with its
/// explicit or default value. Identity ignores the warning list.
struct RunSpec {
  AlgorithmKind algorithm = AlgorithmKind::kKMeans;
  std::map<std::string, std::string> params;
  std::vector<std::string> warnings;

  friend bool operator==(const RunSpec& a, const RunSpec& b) {
    return a.algorithm == b.algorithm && a.params == b.params;
  }
  friend bool operator!=(const RunSpec& a, const RunSpec& b) { return !(a == b); }
};

namespace detail {

inline std::uint64_t require_uint(const std::string& key, const std::string& value,
                                  std::uint64_t min_value) {
  long long v = 0;
  if (!parse_full_int64(value, v) || v < 0 ||
      static_cast<std::uint64_t>(v) < min_value) {
    throw std::invalid_argument("invalid value \"" + value + "\" for key " + key +
                                " (expected an integer >= " +
                                std::to_string(min_value) + ")");
  }
  return static_cast<std::uint64_t>(v);
}

inline double require_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  if (!parse_full_double(value, v)) {
    throw std::invalid_argument("invalid value \"" + value + "\" for key " + key +
                                " (expected a real number)");
  }
  return v;
}

inline bool require_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("invalid value \"" + value + "\" for key " + key +
                              " (expected true or false)");
}

/// Declarative per-key rule: default value ("" plus required flag for
/// mandatory keys) and a validator run on the final value. Conditional
/// keys are added to the schema only when their precondition holds, so
/// resolution stays a pure function of the ParamSet.
struct KeyRule {
  std::string key;
  std::string fallback;
  bool required = false;
  void (*check)(const std::string& key, const std::string& value) = nullptr;
};

inline void check_none(const std::string&, const std::string&) {}

inline void check_range(const std::string& key, const std::string& value) {
  try {
    parse_int_range(value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("invalid value \"" + value + "\" for key " + key +
                                ": " + e.what());
  }
}

inline void check_metric(const std::string& key, const std::string& value) {
  try {
    metric_from_name(value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(
        "invalid value \"" + value + "\" for key " + key +
        " (expected euclidean, squared_euclidean, or manhattan)");
  }
}

inline void check_uint0(const std::string& key, const std::string& value) {
  require_uint(key, value, 0);
}
inline void check_uint1(const std::string& key, const std::string& value) {
  require_uint(key, value, 1);
}
inline void check_bool(const std::string& key, const std::string& value) {
  require_bool(key, value);
}

}  // namespace detail

/// Resolves a ParamSet into a RunSpec: picks the algorithm, applies that
/// algorithm's defaults, and validates every value. Unknown keys raise
/// an error listing the valid ones; duplicate keys keep the last value
/// and add a warning.
inline RunSpec build_algorithm(const ParamSet& p) {
  RunSpec spec;

  // Last value wins per key, in first-appearance order.
  std::map<std::string, std::string> given;
  for (const auto& [key, value] : p.items) {
    auto it = given.find(key);
    if (it != given.end()) {
      spec.warnings.push_back("duplicate key \"" + key + "\": using value \"" +
                              value + "\"");
      it->second = value;
    } else {
      given.emplace(key, value);
    }
  }

  const auto algo_it = given.find("algorithm");
  if (algo_it == given.end()) {
    throw std::invalid_argument("missing key algorithm");
  }
  spec.algorithm = algorithm_kind_from_name(algo_it->second);
  given.erase(algo_it);

  const bool hac = spec.algorithm == AlgorithmKind::kAgnes ||
                   spec.algorithm == AlgorithmKind::kAnderberg ||
                   spec.algorithm == AlgorithmKind::kNNChain ||
                   spec.algorithm == AlgorithmKind::kSlink ||
                   spec.algorithm == AlgorithmKind::kMiniMax;

  std::vector<detail::KeyRule> rules;
  rules.push_back({"seed", "0", false, detail::check_uint0});

  if (hac) {
    if (spec.algorithm == AlgorithmKind::kSlink) {
      rules.push_back({"hac.linkage", "single", false,
                       [](const std::string& key, const std::string& value) {
                         if (value != "single") {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (slink computes single linkage only)");
                         }
                       }});
    } else if (spec.algorithm != AlgorithmKind::kMiniMax) {
      rules.push_back({"hac.linkage", "ward", false,
                       [](const std::string& key, const std::string& value) {
                         try {
                           linkage_from_name(value);
                         } catch (const std::invalid_argument& e) {
                           throw std::invalid_argument("invalid value \"" + value +
                                                       "\" for key " + key + ": " +
                                                       e.what());
                         }
                       }});
    }
    if (spec.algorithm == AlgorithmKind::kMiniMax) {
      rules.push_back({"hac.engine", "matrix", false,
                       [](const std::string& key, const std::string& value) {
                         if (value != "matrix" && value != "anderberg" &&
                             value != "nnchain") {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (expected matrix, anderberg, or nnchain)");
                         }
                       }});
    }

    // Metric default: squared-input schemes run on squared euclidean
    // distances and reject anything else; the rest default to euclidean.
    LinkageScheme scheme;  // ward unless configured below
    if (spec.algorithm == AlgorithmKind::kSlink ||
        spec.algorithm == AlgorithmKind::kMiniMax) {
      scheme.kind = LinkageKind::kSingle;
    } else {
      const auto link_it = given.find("hac.linkage");
      if (link_it != given.end()) {
        try {
          scheme.kind = linkage_from_name(link_it->second);
        } catch (const std::invalid_argument& e) {
          throw std::invalid_argument("invalid value \"" + link_it->second +
                                      "\" for key hac.linkage: " + e.what());
        }
      }
    }
    if (scheme.squared_input_expected()) {
      rules.push_back({"hac.metric", "squared_euclidean", false,
                       [](const std::string& key, const std::string& value) {
                         detail::check_metric(key, value);
                         if (value != "squared_euclidean") {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (this linkage operates on squared distances)");
                         }
                       }});
    } else {
      rules.push_back({"hac.metric", "euclidean", false, detail::check_metric});
    }
    if (scheme.kind == LinkageKind::kFlexibleBeta) {
      rules.push_back({"hac.beta", "-0.25", false,
                       [](const std::string& key, const std::string& value) {
                         const double b = detail::require_real(key, value);
                         if (!(b > -1.0 && b < 1.0)) {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (expected a real in (-1, 1))");
                         }
                       }});
    } else if (given.count("hac.beta") != 0) {
      throw std::invalid_argument("hac.beta requires hac.linkage=flexible_beta");
    }
    if (spec.algorithm == AlgorithmKind::kNNChain) {
      LinkageScheme probe = scheme;
      const auto beta_it = given.find("hac.beta");
      double b = 0.0;
      if (beta_it != given.end() && detail::parse_full_double(beta_it->second, b)) {
        probe.beta = b;
      }
      if (!probe.reducible()) {
        throw std::invalid_argument(
            std::string("hac.linkage=") + linkage_name(probe.kind) +
            " is not reducible; nnchain requires a reducible linkage");
      }
    }

    const bool height_cut = given.count("hac.cut.height") != 0;
    if (height_cut) {
      if (given.count("hac.cut.k") != 0 || given.count("hac.cut.minsize") != 0) {
        throw std::invalid_argument(
            "hac.cut.height excludes hac.cut.k and hac.cut.minsize");
      }
      rules.push_back({"hac.cut.height", "", true,
                       [](const std::string& key, const std::string& value) {
                         const double h = detail::require_real(key, value);
                         if (!(h >= 0.0)) {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (expected a non-negative real)");
                         }
                       }});
    } else {
      rules.push_back({"hac.cut.k", "2", false, detail::check_range});
      if (given.count("hac.cut.minsize") != 0) {
        rules.push_back({"hac.cut.minsize", "1", false, detail::check_uint1});
      }
    }
  } else if (spec.algorithm == AlgorithmKind::kKMeans) {
    rules.push_back({"kmeans.k", "", true, detail::check_range});
    rules.push_back({"kmeans.variant", "lloyd", false,
                     [](const std::string& key, const std::string& value) {
                       if (value == "minusminus") return;
                       try {
                         kmeans_variant_from_name(value);
                       } catch (const std::invalid_argument& e) {
                         throw std::invalid_argument("invalid value \"" + value +
                                                     "\" for key " + key + ": " +
                                                     e.what());
                       }
                     }});
    rules.push_back({"kmeans.init", "kmeanspp", false,
                     [](const std::string& key, const std::string& value) {
                       InitKind kind;
                       try {
                         kind = init_kind_from_name(value);
                       } catch (const std::invalid_argument& e) {
                         throw std::invalid_argument("invalid value \"" + value +
                                                     "\" for key " + key + ": " +
                                                     e.what());
                       }
                       if (kind == InitKind::kPredefined) {
                         throw std::invalid_argument(
                             "kmeans.init=predefined is not available from the "
                             "command line");
                       }
                     }});
    rules.push_back({"kmeans.maxiter", "0", false, detail::check_uint0});
    const auto variant_it = given.find("kmeans.variant");
    const bool minusminus =
        variant_it != given.end() && variant_it->second == "minusminus";
    if (minusminus) {
      rules.push_back({"kmeans.rate", "0.05", false,
                       [](const std::string& key, const std::string& value) {
                         const double r = detail::require_real(key, value);
                         if (!(r >= 0.0 && r < 1.0)) {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (expected a real in [0, 1))");
                         }
                       }});
    } else if (given.count("kmeans.rate") != 0) {
      throw std::invalid_argument("kmeans.rate requires kmeans.variant=minusminus");
    }
  } else if (spec.algorithm == AlgorithmKind::kKMedoids) {
    rules.push_back({"kmedoids.k", "", true, detail::check_range});
    rules.push_back({"kmedoids.algo", "fastpam", false,
                     [](const std::string& key, const std::string& value) {
                       if (value == "park") return;
                       try {
                         swap_algorithm_from_name(value);
                       } catch (const std::invalid_argument& e) {
                         throw std::invalid_argument("invalid value \"" + value +
                                                     "\" for key " + key + ": " +
                                                     e.what());
                       }
                     }});
    rules.push_back({"kmedoids.init", "pam_build", false,
                     [](const std::string& key, const std::string& value) {
                       InitKind kind;
                       try {
                         kind = init_kind_from_name(value);
                       } catch (const std::invalid_argument& e) {
                         throw std::invalid_argument("invalid value \"" + value +
                                                     "\" for key " + key + ": " +
                                                     e.what());
                       }
                       if (!init_produces_indices(kind)) {
                         throw std::invalid_argument(
                             "invalid value \"" + value + "\" for key " + key +
                             " (medoid algorithms need point-picking "
                             "initializations)");
                       }
                     }});
    rules.push_back({"kmedoids.maxiter", "0", false, detail::check_uint0});
    rules.push_back({"kmedoids.metric", "euclidean", false, detail::check_metric});
    const auto algo_value = given.find("kmedoids.algo");
    const bool fastpam = algo_value == given.end() || algo_value->second == "fastpam";
    if (fastpam) {
      rules.push_back({"kmedoids.tolerance", "1", false,
                       [](const std::string& key, const std::string& value) {
                         const double t = detail::require_real(key, value);
                         if (!(t >= 0.0 && t <= 1.0)) {
                           throw std::invalid_argument(
                               "invalid value \"" + value + "\" for key " + key +
                               " (expected a real in [0, 1])");
                         }
                       }});
    } else if (given.count("kmedoids.tolerance") != 0) {
      throw std::invalid_argument(
          "kmedoids.tolerance requires kmedoids.algo=fastpam");
    }
  } else if (spec.algorithm == AlgorithmKind::kClara) {
    rules.push_back({"clara.k", "", true, detail::check_range});
    rules.push_back({"clara.numsamples", "5", false, detail::check_uint1});
    rules.push_back({"clara.samplesize", "auto", false,
                     [](const std::string& key, const std::string& value) {
                       if (value == "auto") return;
                       detail::require_uint(key, value, 1);
                     }});
    rules.push_back({"clara.fast", "false", false, detail::check_bool});
    rules.push_back({"clara.keep_best", "true", false, detail::check_bool});
    rules.push_back({"clara.metric", "euclidean", false, detail::check_metric});
  } else {  // clarans
    rules.push_back({"clarans.k", "", true, detail::check_range});
    rules.push_back({"clarans.numlocal", "2", false, detail::check_uint1});
    rules.push_back({"clarans.maxneighbor", "0.0125", false,
                     [](const std::string& key, const std::string& value) {
                       const double v = detail::require_real(key, value);
                       if (!(v >= 0.0)) {
                         throw std::invalid_argument(
                             "invalid value \"" + value + "\" for key " + key +
                             " (expected a count or a fraction in (0, 1))");
                       }
                       if (v >= 1.0 && v != static_cast<double>(
                                                static_cast<std::uint64_t>(v))) {
                         throw std::invalid_argument(
                             "invalid value \"" + value + "\" for key " + key +
                             " (counts above 1 must be whole numbers)");
                       }
                     }});
    rules.push_back({"clarans.fast", "false", false, detail::check_bool});
    rules.push_back({"clarans.metric", "euclidean", false, detail::check_metric});
  }

  // Apply defaults, validate, and reject unknown keys.
  for (const auto& rule : rules) {
    auto it = given.find(rule.key);
    if (it == given.end()) {
      if (rule.required) {
        throw std::invalid_argument("missing " + rule.key);
      }
      spec.params[rule.key] = rule.fallback;
    } else {
      spec.params[rule.key] = it->second;
      given.erase(it);
    }
    if (rule.check) rule.check(rule.key, spec.params[rule.key]);
  }
  if (!given.empty()) {
    std::string valid;
    for (const auto& rule : rules) {
      if (!valid.empty()) valid += ", ";
      valid += rule.key;
    }
    throw std::invalid_argument("unknown key \"" + given.begin()->first +
                                "\" for algorithm " +
                                algorithm_kind_name(spec.algorithm) +
                                "; valid keys: algorithm, " + valid);
  }

  return spec;
}

}  // namespace clusterkit
