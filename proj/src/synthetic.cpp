#include "synthetic.hpp"

#include <ostream>
#include <stdexcept>

namespace gooml {

void SyntheticStreamConfig::validate() const {
  if (label_count < 2) throw std::invalid_argument("synthetic stream needs at least 2 labels");
  if (feature_count < 1) throw std::invalid_argument("synthetic stream needs at least 1 feature");
  if (drift_point && *drift_point >= instance_count) {
    throw std::invalid_argument("drift_point must lie before the end of the stream");
  }
  if (noise_sigma <= 0.0) throw std::invalid_argument("noise_sigma must be positive");
}

SyntheticStream::SyntheticStream(SyntheticStreamConfig config)
    : config_(std::move(config)),
      header_(make_numeric_header("synthetic", config_.label_count, config_.feature_count)),
      rng_(config_.seed) {
  config_.validate();
  std::uniform_real_distribution<double> prior_dist(0.2, 0.6);
  std::uniform_real_distribution<double> offset_dist(-1.5, 1.5);
  label_priors_.reserve(config_.label_count);
  for (std::size_t j = 0; j < config_.label_count; ++j) label_priors_.push_back(prior_dist(rng_));
  offsets_.resize(config_.label_count);
  for (auto& row : offsets_) {
    row.reserve(config_.feature_count);
    for (std::size_t i = 0; i < config_.feature_count; ++i) row.push_back(offset_dist(rng_));
  }
}

std::optional<Instance> SyntheticStream::next() {
  if (emitted_ >= config_.instance_count) return std::nullopt;
  const bool drifted = config_.drift_point && emitted_ >= *config_.drift_point;
  ++emitted_;

  LabelVector labels = LabelVector::zeros(config_.label_count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t j = 0; j < config_.label_count; ++j) {
    labels.set(j, unit(rng_) < label_priors_[j]);
  }

  Instance instance;
  instance.features.resize(config_.feature_count);
  std::normal_distribution<double> noise(0.0, config_.noise_sigma);
  for (std::size_t i = 0; i < config_.feature_count; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < config_.label_count; ++j) {
      if (labels[j]) mean += offsets_[j][i];
    }
    if (drifted) mean += config_.drift_feature_shift;
    instance.features[i] = mean + noise(rng_);
  }

  if (drifted && config_.drift_label_flip) {
    for (std::size_t j = 0; j < config_.label_count; ++j) labels.set(j, !labels[j]);
  }
  instance.labels = std::move(labels);
  return instance;
}

void write_synthetic_arff(const SyntheticStreamConfig& config, std::ostream& out) {
  SyntheticStream stream(config);
  const auto& header = stream.header();
  out << "% synthetic multi-label stream, seed=" << config.seed;
  if (config.drift_point) {
    out << ", drift_point=" << *config.drift_point
        << ", drift_kind=" << (config.drift_label_flip ? "flip" : "shift");
    if (!config.drift_label_flip) out << ", drift_shift=" << config.drift_feature_shift;
  }
  out << "\n";
  out << "@relation '" << header.relation_name << "'\n";
  for (const auto& attr : header.attributes) {
    out << "@attribute " << attr.name << " ";
    if (attr.kind == FeatureKind::numeric) {
      out << "numeric";
    } else {
      out << "{";
      for (std::size_t i = 0; i < attr.categories.size(); ++i) {
        if (i) out << ",";
        out << attr.categories[i];
      }
      out << "}";
    }
    out << "\n";
  }
  out << "@data\n";
  while (auto instance = stream.next()) {
    out << format_instance(header, *instance) << "\n";
  }
}

}  // namespace gooml
