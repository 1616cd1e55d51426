#include "core.hpp"

#include <numeric>
#include <stdexcept>

namespace gooml {

LabelVector::LabelVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b != 0 && b != 1) throw std::invalid_argument("label bit outside {0,1}");
  }
}

LabelVector LabelVector::zeros(std::size_t label_count) {
  LabelVector v;
  v.bits_.assign(label_count, 0);
  return v;
}

std::size_t LabelVector::count() const {
  return static_cast<std::size_t>(std::accumulate(bits_.begin(), bits_.end(), std::size_t{0}));
}

DataChunk::DataChunk(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("chunk capacity must be positive");
  instances_.reserve(capacity);
}

void DataChunk::push(Instance instance) {
  if (full()) throw std::logic_error("push into a full chunk");
  instances_.push_back(std::move(instance));
}

RelevanceVector normalize_relevance(const RelevanceVector& raw) {
  if (raw.empty()) throw std::invalid_argument("empty relevance vector");
  double sum = 0.0;
  for (double v : raw) {
    if (v < 0.0) throw std::invalid_argument("negative relevance score");
    sum += v;
  }
  RelevanceVector out(raw.size());
  if (sum <= 0.0) {
    const double uniform = 1.0 / static_cast<double>(raw.size());
    for (auto& v : out) v = uniform;
    return out;
  }
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = raw[j] / sum;
  return out;
}

LabelVector threshold_relevance(const RelevanceVector& normalized) {
  const double cutoff = 1.0 / static_cast<double>(normalized.size());
  LabelVector out = LabelVector::zeros(normalized.size());
  for (std::size_t j = 0; j < normalized.size(); ++j) {
    if (normalized[j] > cutoff) out.set(j, true);
  }
  return out;
}

double label_cardinality(std::span<const LabelVector> dataset) {
  if (dataset.empty()) throw std::invalid_argument("label cardinality of an empty dataset");
  const std::size_t label_count = dataset.front().size();
  std::size_t total = 0;
  for (const auto& y : dataset) {
    if (y.size() != label_count) throw std::invalid_argument("ragged label vectors");
    total += y.count();
  }
  return static_cast<double>(total) / static_cast<double>(dataset.size());
}

double label_density(std::span<const LabelVector> dataset) {
  if (dataset.empty()) throw std::invalid_argument("label density of an empty dataset");
  return label_cardinality(dataset) / static_cast<double>(dataset.front().size());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gooml
