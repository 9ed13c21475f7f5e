#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterkit {

/// Dense row-major matrix of n points with d coordinates each.
/// Optional per-row labels travel with the data (parsers fill them in,
/// algorithms ignore them).
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::size_t n, std::size_t d, std::vector<double> values,
          std::vector<std::string> labels = {})
      : n_(n), d_(d), values_(std::move(values)), labels_(std::move(labels)) {
    if (n_ == 0 || d_ == 0) {
      throw std::invalid_argument("Dataset: need at least one point and one dimension");
    }
    if (values_.size() != n_ * d_) {
      throw std::invalid_argument("Dataset: value buffer does not match n*d");
    }
    if (!labels_.empty() && labels_.size() != n_) {
      throw std::invalid_argument("Dataset: label count does not match point count");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("Dataset: coordinates must be finite");
      }
    }
  }

  std::size_t size() const { return n_; }
  std::size_t dimensionality() const { return d_; }

  const double* row(std::size_t i) const { return values_.data() + i * d_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * d_ + j]; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

/// Convenience constructor from nested vectors (ragged input throws).
inline Dataset make_dataset(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("make_dataset: no rows");
  }
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) {
      throw std::invalid_argument("make_dataset: rows differ in dimensionality");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Dataset(rows.size(), d, std::move(flat));
}

}  // namespace clusterkit
