#pragma once

#include "classifier.hpp"

namespace gooml {

/// Incremental Naive Bayes over mixed nominal/numeric features. Nominal
/// likelihoods use Laplace smoothing with constant alpha; numeric
/// likelihoods use per-class Gaussians with a floored variance. Missing
/// feature values are skipped in both the sufficient statistics and the
/// likelihood product.
class NaiveBayes final : public Classifier {
 public:
  NaiveBayes(FeatureSpecList specs, std::size_t class_count, double alpha = 1.0);

  void update(const std::vector<double>& features, std::size_t class_label) override;
  std::vector<double> predict_proba(const std::vector<double>& features) const override;
  std::size_t class_count() const override { return class_counts_.size(); }
  std::size_t size_estimate() const override;

  double total_count() const { return total_count_; }
  double class_total(std::size_t c) const { return class_counts_[c]; }
  const GaussianStat& numeric_stat(std::size_t c, std::size_t feature) const;
  double nominal_count(std::size_t c, std::size_t feature, std::size_t category) const;

  nlohmann::json to_json() const override;
  static std::unique_ptr<NaiveBayes> from_json(const nlohmann::json& j);

  static constexpr double variance_floor = 1e-6;

 private:
  std::size_t nominal_offset(std::size_t c, std::size_t feature) const;

  FeatureSpecList specs_;
  double alpha_;
  double total_count_ = 0.0;
  std::vector<double> class_counts_;
  // Nominal category counts, flattened per class then per feature; numeric
  // features occupy no slots here.
  std::vector<double> nominal_counts_;
  std::vector<std::size_t> nominal_base_;  // per feature start into a class block
  std::size_t nominal_block_ = 0;          // slots per class
  std::vector<GaussianStat> numeric_stats_;  // class-major [class][feature]
};

}  // namespace gooml
