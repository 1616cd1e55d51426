#pragma once

#include "classifier.hpp"

namespace gooml {

/// Hoeffding bound: with probability 1 - confidence, the true mean of a
/// range-R variable lies within epsilon of the sample mean after count
/// observations.
double hoeffding_bound(double range, double confidence, double count);

struct HoeffdingTreeConfig {
  std::size_t grace_period = 200;  // leaf arrivals between split evaluations
  double split_confidence = 1e-7;  // delta
  double tie_threshold = 0.05;     // tau
  double alpha = 1.0;              // Laplace smoothing at leaves
  std::size_t numeric_candidates = 10;
};

/// Incremental decision tree with Hoeffding-bound split decisions.
/// Numeric split candidates come from per-class Gaussian approximations
/// evaluated at a fixed set of thresholds between the observed bounds;
/// nominal features split multiway over the declared categories. Missing
/// values are skipped in leaf statistics and routed to the heaviest branch
/// at internal nodes.
class HoeffdingTree final : public Classifier {
 public:
  HoeffdingTree(FeatureSpecList specs, std::size_t class_count, HoeffdingTreeConfig config = {});
  ~HoeffdingTree() override;
  HoeffdingTree(HoeffdingTree&&) noexcept;
  HoeffdingTree& operator=(HoeffdingTree&&) noexcept;

  void update(const std::vector<double>& features, std::size_t class_label) override;
  std::vector<double> predict_proba(const std::vector<double>& features) const override;
  std::size_t class_count() const override { return class_count_; }
  std::size_t size_estimate() const override;

  std::size_t node_count() const { return node_count_; }
  std::size_t depth() const;

  nlohmann::json to_json() const override;
  static std::unique_ptr<HoeffdingTree> from_json(const nlohmann::json& j);

 private:
  struct Node;

  Node* route_to_leaf(const std::vector<double>& features) const;
  void try_split(Node& leaf);

  FeatureSpecList specs_;
  std::size_t class_count_;
  HoeffdingTreeConfig config_;
  std::unique_ptr<Node> root_;
  std::size_t node_count_ = 1;
  // Layout of per-leaf nominal count blocks, shared across nodes.
  std::vector<std::size_t> nominal_base_;
  std::size_t nominal_block_ = 0;
};

}  // namespace gooml
