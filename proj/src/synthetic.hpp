#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>

#include "arff.hpp"
#include "core.hpp"

namespace gooml {

/// Configuration for the synthetic multi-label stream. Features are drawn
/// from label-conditional Gaussians: each label contributes a fixed random
/// offset vector to the feature means, so the labels are learnable from the
/// features. At drift_point the stream changes: a constant shift is added to
/// every feature mean ("shift") and/or the label bits are inverted after
/// feature generation ("flip"), which breaks any learned feature-label map.
struct SyntheticStreamConfig {
  std::size_t label_count = 2;     // L >= 2
  std::size_t feature_count = 1;   // M >= 1
  std::size_t instance_count = 0;  // N
  std::uint64_t seed = 1;
  std::optional<std::size_t> drift_point;  // instance index where drift starts
  double drift_feature_shift = 2.0;
  bool drift_label_flip = false;
  double noise_sigma = 0.5;

  void validate() const;
};

class SyntheticStream final : public InstanceSource {
 public:
  explicit SyntheticStream(SyntheticStreamConfig config);

  const StreamHeader& header() const override { return header_; }
  std::optional<Instance> next() override;

 private:
  SyntheticStreamConfig config_;
  StreamHeader header_;
  std::mt19937_64 rng_;
  std::vector<double> label_priors_;        // P(y_j = 1)
  std::vector<std::vector<double>> offsets_;  // per label, per feature mean offset
  std::size_t emitted_ = 0;
};

/// Writes the configured stream as a MEKA-convention ARFF file; a comment
/// line records the drift metadata.
void write_synthetic_arff(const SyntheticStreamConfig& config, std::ostream& out);

}  // namespace gooml
