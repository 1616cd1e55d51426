#include "hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace gooml {

double hoeffding_bound(double range, double confidence, double count) {
  if (count < 1.0) throw std::invalid_argument("hoeffding bound needs count >= 1");
  if (confidence <= 0.0 || confidence > 1.0) throw std::invalid_argument("confidence outside (0,1]");
  if (range <= 0.0) throw std::invalid_argument("range must be positive");
  return std::sqrt(range * range * std::log(1.0 / confidence) / (2.0 * count));
}

namespace {

double entropy(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return h;
}

double gaussian_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc((mean - x) / std::sqrt(2.0 * variance));
}

struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
  std::vector<double> branch_mass;  // estimated instances per child
};

}  // namespace

struct HoeffdingTree::Node {
  // Internal-node state; split_feature == -1 marks a leaf.
  int split_feature = -1;
  double threshold = 0.0;
  std::size_t default_child = 0;
  std::vector<std::unique_ptr<Node>> children;

  // Leaf statistics.
  std::vector<double> class_counts;
  std::vector<double> nominal_counts;      // [class][feature-slot][category]
  std::vector<GaussianStat> numeric_stats; // [class][feature]
  std::vector<double> numeric_min, numeric_max;
  double seen_since_eval = 0.0;

  bool is_leaf() const { return split_feature < 0; }
  double total() const {
    double t = 0.0;
    for (double c : class_counts) t += c;
    return t;
  }
};

HoeffdingTree::HoeffdingTree(FeatureSpecList specs, std::size_t class_count, HoeffdingTreeConfig config)
    : specs_(std::move(specs)), class_count_(class_count), config_(config) {
  if (class_count_ < 2) throw std::invalid_argument("tree needs at least 2 classes");
  nominal_base_.resize(specs_.size());
  for (std::size_t f = 0; f < specs_.size(); ++f) {
    nominal_base_[f] = nominal_block_;
    if (specs_[f].kind == FeatureKind::nominal) nominal_block_ += specs_[f].arity;
  }
  root_ = std::make_unique<Node>();
  root_->class_counts.assign(class_count_, 0.0);
  root_->nominal_counts.assign(nominal_block_ * class_count_, 0.0);
  root_->numeric_stats.assign(specs_.size() * class_count_, GaussianStat{});
  root_->numeric_min.assign(specs_.size(), std::numeric_limits<double>::infinity());
  root_->numeric_max.assign(specs_.size(), -std::numeric_limits<double>::infinity());
}

HoeffdingTree::~HoeffdingTree() = default;
HoeffdingTree::HoeffdingTree(HoeffdingTree&&) noexcept = default;
HoeffdingTree& HoeffdingTree::operator=(HoeffdingTree&&) noexcept = default;

HoeffdingTree::Node* HoeffdingTree::route_to_leaf(const std::vector<double>& features) const {
  Node* node = root_.get();
  while (!node->is_leaf()) {
    const double v = features[static_cast<std::size_t>(node->split_feature)];
    std::size_t child;
    if (is_missing(v)) {
      child = node->default_child;
    } else if (specs_[static_cast<std::size_t>(node->split_feature)].kind == FeatureKind::nominal) {
      child = std::min(static_cast<std::size_t>(v), node->children.size() - 1);
    } else {
      child = v <= node->threshold ? 0 : 1;
    }
    node = node->children[child].get();
  }
  return node;
}

void HoeffdingTree::update(const std::vector<double>& features, std::size_t class_label) {
  if (features.size() != specs_.size()) throw std::invalid_argument("feature arity mismatch");
  if (class_label >= class_count_) throw std::invalid_argument("class label out of range");
  Node* leaf = route_to_leaf(features);
  leaf->class_counts[class_label] += 1.0;
  leaf->seen_since_eval += 1.0;
  for (std::size_t f = 0; f < specs_.size(); ++f) {
    const double v = features[f];
    if (is_missing(v)) continue;
    if (specs_[f].kind == FeatureKind::nominal) {
      const auto cat = static_cast<std::size_t>(v);
      if (cat >= specs_[f].arity) throw std::invalid_argument("nominal category out of range");
      leaf->nominal_counts[class_label * nominal_block_ + nominal_base_[f] + cat] += 1.0;
    } else {
      leaf->numeric_stats[class_label * specs_.size() + f].add(v);
      leaf->numeric_min[f] = std::min(leaf->numeric_min[f], v);
      leaf->numeric_max[f] = std::max(leaf->numeric_max[f], v);
    }
  }
  if (leaf->seen_since_eval >= static_cast<double>(config_.grace_period)) {
    leaf->seen_since_eval = 0.0;
    try_split(*leaf);
  }
}

void HoeffdingTree::try_split(Node& leaf) {
  const double n = leaf.total();
  if (n < 2.0) return;
  const double base_entropy = entropy(leaf.class_counts, n);

  SplitCandidate best, second;
  std::vector<double> branch_counts;
  for (std::size_t f = 0; f < specs_.size(); ++f) {
    SplitCandidate cand;
    cand.feature = static_cast<int>(f);
    if (specs_[f].kind == FeatureKind::nominal) {
      const std::size_t arity = specs_[f].arity;
      double observed = 0.0;
      double children_entropy = 0.0;
      cand.branch_mass.assign(arity, 0.0);
      std::vector<double> per_class(class_count_);
      for (std::size_t cat = 0; cat < arity; ++cat) {
        double cat_total = 0.0;
        for (std::size_t c = 0; c < class_count_; ++c) {
          per_class[c] = leaf.nominal_counts[c * nominal_block_ + nominal_base_[f] + cat];
          cat_total += per_class[c];
        }
        cand.branch_mass[cat] = cat_total;
        observed += cat_total;
        children_entropy += cat_total * entropy(per_class, cat_total);
      }
      if (observed <= 0.0) continue;
      cand.gain = base_entropy - children_entropy / observed;
    } else {
      // Gaussian approximation of the class-conditional distributions,
      // probed at evenly spaced candidate thresholds.
      if (!(leaf.numeric_min[f] < leaf.numeric_max[f])) continue;
      const double lo = leaf.numeric_min[f];
      const double hi = leaf.numeric_max[f];
      double best_gain = -1.0;
      double best_threshold = 0.0;
      std::vector<double> below(class_count_), above(class_count_);
      double best_below = 0.0, best_above = 0.0;
      for (std::size_t t = 1; t <= config_.numeric_candidates; ++t) {
        const double threshold =
            lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(config_.numeric_candidates + 1);
        double total_below = 0.0, total_above = 0.0;
        for (std::size_t c = 0; c < class_count_; ++c) {
          const auto& stat = leaf.numeric_stats[c * specs_.size() + f];
          if (stat.count <= 0.0) {
            below[c] = above[c] = 0.0;
            continue;
          }
          const double var = std::max(stat.variance(), 1e-12);
          below[c] = stat.count * gaussian_cdf(threshold, stat.mean, var);
          above[c] = stat.count - below[c];
          total_below += below[c];
          total_above += above[c];
        }
        const double observed = total_below + total_above;
        if (observed <= 0.0) continue;
        const double children_entropy =
            (total_below * entropy(below, total_below) + total_above * entropy(above, total_above)) / observed;
        const double gain = base_entropy - children_entropy;
        if (gain > best_gain) {
          best_gain = gain;
          best_threshold = threshold;
          best_below = total_below;
          best_above = total_above;
        }
      }
      if (best_gain < 0.0) continue;
      cand.gain = best_gain;
      cand.threshold = best_threshold;
      cand.branch_mass = {best_below, best_above};
    }
    if (cand.gain > best.gain) {
      second = best;
      best = cand;
    } else if (cand.gain > second.gain) {
      second = cand;
    }
  }

  if (best.feature < 0 || best.gain <= 1e-10) return;
  const double epsilon = hoeffding_bound(std::log2(static_cast<double>(class_count_)),
                                         config_.split_confidence, n);
  if (!(best.gain - second.gain > epsilon || epsilon < config_.tie_threshold)) return;

  // Promote the leaf to an internal node with fresh child leaves.
  leaf.split_feature = best.feature;
  leaf.threshold = best.threshold;
  const std::size_t child_count =
      specs_[static_cast<std::size_t>(best.feature)].kind == FeatureKind::nominal
          ? specs_[static_cast<std::size_t>(best.feature)].arity
          : 2;
  leaf.default_child = static_cast<std::size_t>(
      std::max_element(best.branch_mass.begin(), best.branch_mass.end()) - best.branch_mass.begin());
  leaf.children.reserve(child_count);
  for (std::size_t i = 0; i < child_count; ++i) {
    auto child = std::make_unique<Node>();
    child->class_counts.assign(class_count_, 0.0);
    child->nominal_counts.assign(nominal_block_ * class_count_, 0.0);
    child->numeric_stats.assign(specs_.size() * class_count_, GaussianStat{});
    child->numeric_min.assign(specs_.size(), std::numeric_limits<double>::infinity());
    child->numeric_max.assign(specs_.size(), -std::numeric_limits<double>::infinity());
    leaf.children.push_back(std::move(child));
  }
  node_count_ += child_count;
  leaf.class_counts.clear();
  leaf.class_counts.shrink_to_fit();
  leaf.nominal_counts.clear();
  leaf.nominal_counts.shrink_to_fit();
  leaf.numeric_stats.clear();
  leaf.numeric_stats.shrink_to_fit();
  leaf.numeric_min.clear();
  leaf.numeric_max.clear();
}

std::vector<double> HoeffdingTree::predict_proba(const std::vector<double>& features) const {
  const Node* leaf = route_to_leaf(features);
  const double total = leaf->total();
  std::vector<double> out(class_count_);
  const double denom = total + config_.alpha * static_cast<double>(class_count_);
  for (std::size_t c = 0; c < class_count_; ++c) {
    out[c] = (leaf->class_counts[c] + config_.alpha) / denom;
  }
  return out;
}

std::size_t HoeffdingTree::depth() const {
  std::size_t d = 0;
  // Iterative depth over the children vectors.
  struct Item { const Node* node; std::size_t depth; };
  std::vector<Item> stack{{root_.get(), 0}};
  while (!stack.empty()) {
    auto [node, nd] = stack.back();
    stack.pop_back();
    d = std::max(d, nd);
    for (const auto& child : node->children) stack.push_back({child.get(), nd + 1});
  }
  return d;
}

std::size_t HoeffdingTree::size_estimate() const {
  // 64 bytes per node plus 8 per statistic slot.
  std::size_t bytes = 0;
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* node = stack.back();
    stack.pop_back();
    bytes += 64;
    bytes += 8 * (node->class_counts.size() + node->nominal_counts.size());
    bytes += 24 * node->numeric_stats.size();
    bytes += 16 * node->numeric_min.size();
    for (const auto& child : node->children) stack.push_back(child.get());
  }
  return bytes;
}

nlohmann::json HoeffdingTree::to_json() const {
  nlohmann::json specs = nlohmann::json::array();
  for (const auto& s : specs_) {
    specs.push_back({{"kind", s.kind == FeatureKind::nominal ? "nominal" : "numeric"},
                     {"arity", s.arity}});
  }
  std::function<nlohmann::json(const Node&)> encode = [&](const Node& node) -> nlohmann::json {
    nlohmann::json j;
    j["split_feature"] = node.split_feature;
    if (!node.is_leaf()) {
      j["threshold"] = node.threshold;
      j["default_child"] = node.default_child;
      nlohmann::json children = nlohmann::json::array();
      for (const auto& child : node.children) children.push_back(encode(*child));
      j["children"] = std::move(children);
    } else {
      j["class_counts"] = node.class_counts;
      j["nominal_counts"] = node.nominal_counts;
      nlohmann::json gauss = nlohmann::json::array();
      for (const auto& g : node.numeric_stats) gauss.push_back({g.count, g.mean, g.m2});
      j["numeric_stats"] = std::move(gauss);
      nlohmann::json bounds = nlohmann::json::array();
      for (std::size_t f = 0; f < node.numeric_min.size(); ++f) {
        if (std::isfinite(node.numeric_min[f])) {
          bounds.push_back({f, node.numeric_min[f], node.numeric_max[f]});
        }
      }
      j["bounds"] = std::move(bounds);
      j["seen_since_eval"] = node.seen_since_eval;
    }
    return j;
  };
  return {{"type", "hoeffding_tree"},
          {"class_count", class_count_},
          {"specs", std::move(specs)},
          {"config",
           {{"grace_period", config_.grace_period},
            {"split_confidence", config_.split_confidence},
            {"tie_threshold", config_.tie_threshold},
            {"alpha", config_.alpha},
            {"numeric_candidates", config_.numeric_candidates}}},
          {"root", encode(*root_)}};
}

std::unique_ptr<HoeffdingTree> HoeffdingTree::from_json(const nlohmann::json& j) {
  FeatureSpecList specs;
  for (const auto& s : j.at("specs")) {
    specs.push_back({s.at("kind") == "nominal" ? FeatureKind::nominal : FeatureKind::numeric,
                     s.at("arity").get<std::size_t>()});
  }
  const auto& cj = j.at("config");
  HoeffdingTreeConfig config{cj.at("grace_period").get<std::size_t>(),
                             cj.at("split_confidence").get<double>(),
                             cj.at("tie_threshold").get<double>(),
                             cj.at("alpha").get<double>(),
                             cj.at("numeric_candidates").get<std::size_t>()};
  auto tree = std::make_unique<HoeffdingTree>(std::move(specs), j.at("class_count").get<std::size_t>(), config);

  std::function<void(Node&, const nlohmann::json&)> decode = [&](Node& node, const nlohmann::json& nj) {
    node.split_feature = nj.at("split_feature").get<int>();
    if (!node.is_leaf()) {
      node.threshold = nj.at("threshold").get<double>();
      node.default_child = nj.at("default_child").get<std::size_t>();
      node.class_counts.clear();
      node.nominal_counts.clear();
      node.numeric_stats.clear();
      node.numeric_min.clear();
      node.numeric_max.clear();
      for (const auto& child_json : nj.at("children")) {
        auto child = std::make_unique<Node>();
        child->class_counts.assign(tree->class_count_, 0.0);
        child->nominal_counts.assign(tree->nominal_block_ * tree->class_count_, 0.0);
        child->numeric_stats.assign(tree->specs_.size() * tree->class_count_, GaussianStat{});
        child->numeric_min.assign(tree->specs_.size(), std::numeric_limits<double>::infinity());
        child->numeric_max.assign(tree->specs_.size(), -std::numeric_limits<double>::infinity());
        decode(*child, child_json);
        node.children.push_back(std::move(child));
        ++tree->node_count_;
      }
    } else {
      node.class_counts = nj.at("class_counts").get<std::vector<double>>();
      node.nominal_counts = nj.at("nominal_counts").get<std::vector<double>>();
      const auto& gauss = nj.at("numeric_stats");
      for (std::size_t i = 0; i < node.numeric_stats.size() && i < gauss.size(); ++i) {
        node.numeric_stats[i] = {gauss[i][0].get<double>(), gauss[i][1].get<double>(),
                                 gauss[i][2].get<double>()};
      }
      for (const auto& b : nj.at("bounds")) {
        const auto f = b[0].get<std::size_t>();
        node.numeric_min[f] = b[1].get<double>();
        node.numeric_max[f] = b[2].get<double>();
      }
      node.seen_since_eval = nj.at("seen_since_eval").get<double>();
    }
  };
  decode(*tree->root_, j.at("root"));
  return tree;
}

}  // namespace gooml
