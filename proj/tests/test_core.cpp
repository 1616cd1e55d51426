#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core.hpp"

using namespace gooml;

TEST_CASE("normalize_relevance divides by the sum") {
  auto out = normalize_relevance({2.0, 1.0, 1.0});
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.25));
  CHECK(out[2] == doctest::Approx(0.25));
}

TEST_CASE("normalize_relevance keeps an already normalized vector") {
  auto out = normalize_relevance({0.65, 0.35});
  CHECK(out[0] == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("normalize_relevance maps all-zero input to the uniform vector") {
  auto out = normalize_relevance({0.0, 0.0, 0.0, 0.0});
  for (double v : out) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("normalize_relevance rejects negative entries") {
  CHECK_THROWS_AS(normalize_relevance({0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("normalized vectors sum to one for arbitrary nonnegative input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_int_distribution<std::size_t> length(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    RelevanceVector raw(length(rng));
    for (auto& v : raw) v = value(rng);
    auto out = normalize_relevance(raw);
    double sum = 0.0;
    for (double v : out) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("normalize_relevance is idempotent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    RelevanceVector raw(5);
    for (auto& v : raw) v = value(rng);
    auto once = normalize_relevance(raw);
    auto twice = normalize_relevance(once);
    for (std::size_t j = 0; j < once.size(); ++j) {
      CHECK(std::abs(once[j] - twice[j]) < 1e-12);
    }
  }
}

TEST_CASE("threshold_relevance uses the strict 1/L cutoff") {
  auto labels = threshold_relevance({0.4, 0.3, 0.2, 0.1});
  CHECK(labels == LabelVector({1, 1, 0, 0}));
}

TEST_CASE("threshold_relevance yields the empty set at exact uniformity") {
  auto labels = threshold_relevance({0.5, 0.5});
  CHECK(labels.count() == 0);
  // More generally: at most L-1 labels whenever the entries are equal.
  for (std::size_t l = 2; l <= 8; ++l) {
    RelevanceVector uniform(l, 1.0 / static_cast<double>(l));
    CHECK(threshold_relevance(uniform).count() <= l - 1);
  }
}

TEST_CASE("threshold_relevance keeps a degenerate one-hot vector") {
  auto labels = threshold_relevance({1.0, 0.0, 0.0});
  CHECK(labels == LabelVector({1, 0, 0}));
}

TEST_CASE("label cardinality and density") {
  std::vector<LabelVector> data;
  data.push_back(LabelVector({1, 0, 0, 0}));
  data.push_back(LabelVector({1, 1, 1, 0}));
  CHECK(label_cardinality(data) == doctest::Approx(2.0));
  CHECK(label_density(data) == doctest::Approx(0.5));
}

TEST_CASE("all-zero labelsets have zero cardinality") {
  std::vector<LabelVector> data(3, LabelVector::zeros(5));
  CHECK(label_cardinality(data) == 0.0);
  CHECK(label_density(data) == 0.0);
}

TEST_CASE("label statistics reject an empty dataset") {
  std::vector<LabelVector> data;
  CHECK_THROWS_AS(label_cardinality(data), std::invalid_argument);
  CHECK_THROWS_AS(label_density(data), std::invalid_argument);
}

TEST_CASE("label density stays within [0,1]") {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution bit(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LabelVector> data;
    for (int i = 0; i < 20; ++i) {
      LabelVector y = LabelVector::zeros(6);
      for (std::size_t j = 0; j < 6; ++j) y.set(j, bit(rng));
      data.push_back(y);
    }
    const double density = label_density(data);
    CHECK(density >= 0.0);
    CHECK(density <= 1.0);
  }
}

TEST_CASE("data chunk capacity semantics") {
  DataChunk chunk(2);
  CHECK(chunk.empty());
  chunk.push(Instance{{1.0}, LabelVector({1, 0})});
  CHECK_FALSE(chunk.full());
  chunk.push(Instance{{2.0}, LabelVector({0, 1})});
  CHECK(chunk.full());
  CHECK_THROWS_AS(chunk.push(Instance{{3.0}, LabelVector({0, 0})}), std::logic_error);
  chunk.clear();
  CHECK(chunk.empty());
}

TEST_CASE("label vector rejects values outside {0,1}") {
  CHECK_THROWS_AS(LabelVector({0, 2}), std::invalid_argument);
}
