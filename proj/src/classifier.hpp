#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace gooml {

/// One-pass mean/variance accumulator (Welford update).
struct GaussianStat {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x, double weight = 1.0) {
    count += weight;
    const double delta = x - mean;
    mean += weight * delta / count;
    m2 += weight * delta * (x - mean);
  }

  /// Population variance; 0 until two observations arrive.
  double variance() const { return count > 0.0 ? m2 / count : 0.0; }
};

/// Incremental single-target classifier over a fixed feature layout. Binary
/// problems use class_count = 2 with class 1 as the positive class.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual void update(const std::vector<double>& features, std::size_t class_label) = 0;
  /// Posterior over classes; sums to 1 and is strictly positive. Untrained
  /// models answer uniformly.
  virtual std::vector<double> predict_proba(const std::vector<double>& features) const = 0;
  virtual std::size_t class_count() const = 0;
  virtual std::size_t size_estimate() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

enum class BaseLearnerKind { hoeffding_tree, naive_bayes };

}  // namespace gooml
