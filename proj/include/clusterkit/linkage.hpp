#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace clusterkit {

/// Agglomeration criteria expressed through the Lance-Williams update
///   d(A+B, C) = a1*d(A,C) + a2*d(B,C) + beta*d(A,B) + gamma*|d(A,C) - d(B,C)|
/// where the coefficients may depend on the cluster sizes |A|, |B|, |C|.
enum class LinkageKind {
  kSingle,
  kComplete,
  kGroupAverage,     // UPGMA
  kWeightedAverage,  // WPGMA
  kCentroid,         // UPGMC, expects squared distances
  kMedian,           // WPGMC, expects squared distances
  kWard,             // expects squared distances
  kMinVariance,      // expects squared distances
  kFlexibleBeta,
};

struct LinkageScheme {
  LinkageKind kind = LinkageKind::kWard;
  /// Mixing parameter of the flexible-beta family; ignored otherwise.
  double beta = -0.25;

  /// True when the criterion is defined over squared dissimilarities
  /// (centroid, median, Ward and the variance criterion). Callers are
  /// expected to feed a squared_euclidean matrix for these; heights are
  /// reported on that squared scale without back-transformation.
  bool squared_input_expected() const {
    switch (kind) {
      case LinkageKind::kCentroid:
      case LinkageKind::kMedian:
      case LinkageKind::kWard:
      case LinkageKind::kMinVariance:
        return true;
      default:
        return false;
    }
  }

  /// Reducible criteria never produce a merge closer than the pair that
  /// made it, which is what nearest-neighbor-chain processing requires.
  /// Centroid and median can invert, and so can the variance criterion:
  /// its (|A|+|C|)^2/T^2 weights sum below one, so a merge of two
  /// clusters equidistant to C lands at 8/9 of that distance. Flexible
  /// beta stays reducible only for beta <= 0.
  bool reducible() const {
    switch (kind) {
      case LinkageKind::kCentroid:
      case LinkageKind::kMedian:
      case LinkageKind::kMinVariance:
        return false;
      case LinkageKind::kFlexibleBeta:
        return beta <= 0.0;
      default:
        return true;
    }
  }
};

inline const char* linkage_name(LinkageKind k) {
  switch (k) {
    case LinkageKind::kSingle: return "single";
    case LinkageKind::kComplete: return "complete";
    case LinkageKind::kGroupAverage: return "group_average";
    case LinkageKind::kWeightedAverage: return "weighted_average";
    case LinkageKind::kCentroid: return "centroid";
    case LinkageKind::kMedian: return "median";
    case LinkageKind::kWard: return "ward";
    case LinkageKind::kMinVariance: return "min_variance";
    case LinkageKind::kFlexibleBeta: return "flexible_beta";
  }
  return "?";
}

inline LinkageKind linkage_from_name(const std::string& name) {
  if (name == "single") return LinkageKind::kSingle;
  if (name == "complete") return LinkageKind::kComplete;
  if (name == "group_average") return LinkageKind::kGroupAverage;
  if (name == "weighted_average") return LinkageKind::kWeightedAverage;
  if (name == "centroid") return LinkageKind::kCentroid;
  if (name == "median") return LinkageKind::kMedian;
  if (name == "ward") return LinkageKind::kWard;
  if (name == "min_variance") return LinkageKind::kMinVariance;
  if (name == "flexible_beta") return LinkageKind::kFlexibleBeta;
  throw std::invalid_argument("unknown linkage \"" + name + "\"");
}

struct LwCoefficients {
  double alpha1;
  double alpha2;
  double beta;
  double gamma;
};

/// Lance-Williams coefficients for merging A and B, evaluated against a
/// third cluster C of the given sizes. All sizes must be positive.
inline LwCoefficients coefficients(const LinkageScheme& s, std::size_t size_a,
                                   std::size_t size_b, std::size_t size_c) {
  if (size_a == 0 || size_b == 0 || size_c == 0) {
    throw std::invalid_argument("coefficients: cluster sizes must be positive");
  }
  const double na = static_cast<double>(size_a);
  const double nb = static_cast<double>(size_b);
  const double nc = static_cast<double>(size_c);
  switch (s.kind) {
    case LinkageKind::kSingle:
      return {0.5, 0.5, 0.0, -0.5};
    case LinkageKind::kComplete:
      return {0.5, 0.5, 0.0, 0.5};
    case LinkageKind::kGroupAverage:
      return {na / (na + nb), nb / (na + nb), 0.0, 0.0};
    case LinkageKind::kWeightedAverage:
      return {0.5, 0.5, 0.0, 0.0};
    case LinkageKind::kCentroid: {
      const double nab = na + nb;
      return {na / nab, nb / nab, -(na * nb) / (nab * nab), 0.0};
    }
    case LinkageKind::kMedian:
      return {0.5, 0.5, -0.25, 0.0};
    case LinkageKind::kWard: {
      const double t = na + nb + nc;
      return {(na + nc) / t, (nb + nc) / t, -nc / t, 0.0};
    }
    case LinkageKind::kMinVariance: {
      const double t = na + nb + nc;
      const double f1 = (na + nc) / t;
      const double f2 = (nb + nc) / t;
      return {f1 * f1, f2 * f2, -(nc * (na + nb)) / (t * t), 0.0};
    }
    case LinkageKind::kFlexibleBeta: {
      return {(1.0 - s.beta) / 2.0, (1.0 - s.beta) / 2.0, s.beta, 0.0};
    }
  }
  throw std::invalid_argument("coefficients: unknown linkage");
}

/// Applies the recurrence: distance from the merge of A and B to C.
/// Single and complete take the exact min / max instead of evaluating the
/// gamma form, which rounds (0.5 + 0.5*sqrt(2) - 0.5*(sqrt(2) - 1) lands one
/// ulp below 1) and would make equal distances drift apart across merges.
inline double combine(const LinkageScheme& s, double d_ac, double d_bc, double d_ab,
                      std::size_t size_a, std::size_t size_b, std::size_t size_c) {
  if (s.kind == LinkageKind::kSingle) return std::fmin(d_ac, d_bc);
  if (s.kind == LinkageKind::kComplete) return std::fmax(d_ac, d_bc);
  const LwCoefficients c = coefficients(s, size_a, size_b, size_c);
  return c.alpha1 * d_ac + c.alpha2 * d_bc + c.beta * d_ab +
         c.gamma * std::fabs(d_ac - d_bc);
}

}  // namespace clusterkit
