#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gooml {

/// Marker for a feature value that is absent ("?" in ARFF input).
constexpr double missing_value = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

enum class FeatureKind : std::uint8_t { numeric, nominal };

/// Shape of one input feature as declared by a stream header. Nominal
/// features carry `arity` = declared category count + 1; the extra slot is
/// the reserved index for categories unseen in the header.
struct FeatureSpec {
  FeatureKind kind = FeatureKind::numeric;
  std::size_t arity = 0;  // 0 for numeric

  bool operator==(const FeatureSpec&) const = default;
};

using FeatureSpecList = std::vector<FeatureSpec>;

/// Ground-truth relevance bits for one instance, y in {0,1}^L.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<std::uint8_t> bits);
  static LabelVector zeros(std::size_t label_count);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t j) const { return bits_[j]; }
  void set(std::size_t j, bool relevant) { bits_[j] = relevant ? 1 : 0; }

  /// Number of relevant labels, |y|.
  std::size_t count() const;

  std::span<const std::uint8_t> bits() const { return bits_; }
  bool operator==(const LabelVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Per-label relevance scores in label order. Raw classifier outputs may
/// live on any nonnegative scale; normalize_relevance maps them onto the
/// unit simplex.
using RelevanceVector = std::vector<double>;

struct Instance {
  std::vector<double> features;       // NaN marks a missing value
  std::optional<LabelVector> labels;  // absent for prediction-only input

  bool labeled() const { return labels.has_value(); }
};

/// Bounded buffer of the most recent instances (DC in the chunk-incremental
/// setting).
class DataChunk {
 public:
  explicit DataChunk(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return instances_.size(); }
  bool full() const { return instances_.size() == capacity_; }
  bool empty() const { return instances_.empty(); }

  /// Appends one instance; rejects pushes beyond capacity.
  void push(Instance instance);
  void clear() { instances_.clear(); }

  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  const std::vector<Instance>& instances() const { return instances_; }

 private:
  std::size_t capacity_;
  std::vector<Instance> instances_;
};

/// Scales a nonnegative score vector so its entries sum to 1. An all-zero
/// vector maps to the uniform vector: an uninformative score set becomes an
/// uninformative vote. Negative entries are a contract violation.
RelevanceVector normalize_relevance(const RelevanceVector& raw);

/// Relevance decision by thresholding at the prior 1/L. Strictly greater
/// than: an exactly uniform vector yields the empty labelset.
LabelVector threshold_relevance(const RelevanceVector& normalized);

/// Mean number of relevant labels per instance, LC.
double label_cardinality(std::span<const LabelVector> dataset);

/// LC / L: fraction of labels relevant on average, LD in [0,1].
double label_density(std::span<const LabelVector> dataset);

/// Splitmix64 step; used to derive independent per-component seeds from a
/// single run seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace gooml
