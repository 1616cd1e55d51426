#include "naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gooml {

NaiveBayes::NaiveBayes(FeatureSpecList specs, std::size_t class_count, double alpha)
    : specs_(std::move(specs)), alpha_(alpha) {
  if (class_count < 1) throw std::invalid_argument("class_count must be positive");
  class_counts_.assign(class_count, 0.0);
  nominal_base_.resize(specs_.size());
  for (std::size_t f = 0; f < specs_.size(); ++f) {
    nominal_base_[f] = nominal_block_;
    if (specs_[f].kind == FeatureKind::nominal) nominal_block_ += specs_[f].arity;
  }
  nominal_counts_.assign(nominal_block_ * class_count, 0.0);
  numeric_stats_.assign(specs_.size() * class_count, GaussianStat{});
}

std::size_t NaiveBayes::nominal_offset(std::size_t c, std::size_t feature) const {
  return c * nominal_block_ + nominal_base_[feature];
}

void NaiveBayes::update(const std::vector<double>& features, std::size_t class_label) {
  if (class_label >= class_counts_.size()) throw std::invalid_argument("class label out of range");
  if (features.size() != specs_.size()) throw std::invalid_argument("feature arity mismatch");
  total_count_ += 1.0;
  class_counts_[class_label] += 1.0;
  for (std::size_t f = 0; f < specs_.size(); ++f) {
    const double v = features[f];
    if (is_missing(v)) continue;
    if (specs_[f].kind == FeatureKind::nominal) {
      const auto cat = static_cast<std::size_t>(v);
      if (cat >= specs_[f].arity) throw std::invalid_argument("nominal category out of range");
      nominal_counts_[nominal_offset(class_label, f) + cat] += 1.0;
    } else {
      numeric_stats_[class_label * specs_.size() + f].add(v);
    }
  }
}

std::vector<double> NaiveBayes::predict_proba(const std::vector<double>& features) const {
  const std::size_t classes = class_counts_.size();
  std::vector<double> posterior(classes, 1.0 / static_cast<double>(classes));
  if (total_count_ <= 0.0) return posterior;

  std::vector<double> log_score(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    // Smoothed prior keeps unseen classes strictly positive.
    log_score[c] = std::log((class_counts_[c] + alpha_) /
                            (total_count_ + alpha_ * static_cast<double>(classes)));
    for (std::size_t f = 0; f < specs_.size(); ++f) {
      const double v = features[f];
      if (is_missing(v)) continue;
      if (specs_[f].kind == FeatureKind::nominal) {
        const auto cat = static_cast<std::size_t>(v);
        const double num = nominal_counts_[nominal_offset(c, f) + cat] + alpha_;
        const double den = class_counts_[c] + alpha_ * static_cast<double>(specs_[f].arity);
        log_score[c] += std::log(num / den);
      } else {
        const auto& stat = numeric_stats_[c * specs_.size() + f];
        // A class with no numeric evidence contributes a neutral likelihood.
        if (stat.count <= 0.0) continue;
        const double var = std::max(stat.variance(), variance_floor);
        const double diff = v - stat.mean;
        log_score[c] += -0.5 * std::log(2.0 * M_PI * var) - diff * diff / (2.0 * var);
      }
    }
  }
  const double max_log = *std::max_element(log_score.begin(), log_score.end());
  double sum = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    posterior[c] = std::exp(log_score[c] - max_log);
    sum += posterior[c];
  }
  for (auto& p : posterior) p /= sum;
  return posterior;
}

const GaussianStat& NaiveBayes::numeric_stat(std::size_t c, std::size_t feature) const {
  return numeric_stats_[c * specs_.size() + feature];
}

double NaiveBayes::nominal_count(std::size_t c, std::size_t feature, std::size_t category) const {
  return nominal_counts_[nominal_offset(c, feature) + category];
}

std::size_t NaiveBayes::size_estimate() const {
  // 8 bytes per count cell, 24 per Gaussian accumulator, 64 fixed overhead.
  return 64 + 8 * (class_counts_.size() + nominal_counts_.size()) + 24 * numeric_stats_.size();
}

nlohmann::json NaiveBayes::to_json() const {
  nlohmann::json specs = nlohmann::json::array();
  for (const auto& s : specs_) {
    specs.push_back({{"kind", s.kind == FeatureKind::nominal ? "nominal" : "numeric"},
                     {"arity", s.arity}});
  }
  nlohmann::json gauss = nlohmann::json::array();
  for (const auto& g : numeric_stats_) gauss.push_back({g.count, g.mean, g.m2});
  return {{"type", "naive_bayes"},
          {"alpha", alpha_},
          {"specs", std::move(specs)},
          {"total", total_count_},
          {"class_counts", class_counts_},
          {"nominal_counts", nominal_counts_},
          {"numeric_stats", std::move(gauss)}};
}

std::unique_ptr<NaiveBayes> NaiveBayes::from_json(const nlohmann::json& j) {
  FeatureSpecList specs;
  for (const auto& s : j.at("specs")) {
    specs.push_back({s.at("kind") == "nominal" ? FeatureKind::nominal : FeatureKind::numeric,
                     s.at("arity").get<std::size_t>()});
  }
  auto model = std::make_unique<NaiveBayes>(std::move(specs),
                                            j.at("class_counts").size(),
                                            j.at("alpha").get<double>());
  model->total_count_ = j.at("total").get<double>();
  model->class_counts_ = j.at("class_counts").get<std::vector<double>>();
  model->nominal_counts_ = j.at("nominal_counts").get<std::vector<double>>();
  const auto& gauss = j.at("numeric_stats");
  for (std::size_t i = 0; i < model->numeric_stats_.size(); ++i) {
    model->numeric_stats_[i] = {gauss[i][0].get<double>(), gauss[i][1].get<double>(),
                                gauss[i][2].get<double>()};
  }
  return model;
}

}  // namespace gooml
