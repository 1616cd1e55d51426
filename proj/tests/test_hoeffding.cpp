#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hoeffding_tree.hpp"

using namespace gooml;

TEST_CASE("hoeffding bound formula") {
  // sqrt(R^2 ln(1/delta) / (2n)) evaluated directly.
  const double eps = hoeffding_bound(1.0, 1e-7, 200.0);
  CHECK(eps == doctest::Approx(std::sqrt(std::log(1e7) / 400.0)).epsilon(1e-12));
  CHECK(eps == doctest::Approx(0.2007).epsilon(1e-3));
}

TEST_CASE("quadrupling the count halves the bound") {
  const double e1 = hoeffding_bound(2.0, 1e-4, 100.0);
  const double e2 = hoeffding_bound(2.0, 1e-4, 400.0);
  CHECK(e2 == doctest::Approx(e1 / 2.0).epsilon(1e-12));
}

TEST_CASE("full confidence collapses the bound to zero") {
  CHECK(hoeffding_bound(1.0, 1.0, 50.0) == 0.0);
}

TEST_CASE("bound rejects invalid arguments") {
  CHECK_THROWS_AS(hoeffding_bound(1.0, 1e-7, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_bound(0.0, 1e-7, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_bound(1.0, 0.0, 10.0), std::invalid_argument);
}

TEST_CASE("tree stays a single leaf during the grace period") {
  HoeffdingTree tree({{FeatureKind::nominal, 3}}, 2);
  for (int i = 0; i < 199; ++i) tree.update({static_cast<double>(i % 2)}, static_cast<std::size_t>(i % 2));
  CHECK(tree.node_count() == 1);
}

TEST_CASE("a perfectly separable nominal feature forces a root split") {
  HoeffdingTreeConfig config;
  HoeffdingTree tree({{FeatureKind::nominal, 3}, {FeatureKind::nominal, 3}}, 2, config);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> noise(0, 1);
  for (std::size_t i = 0; i < 10 * config.grace_period; ++i) {
    const std::size_t label = i % 2;
    // Feature 0 copies the label; feature 1 is noise.
    tree.update({static_cast<double>(label), static_cast<double>(noise(rng))}, label);
  }
  CHECK(tree.node_count() > 1);
  // Routing by the split sends each class to its own leaf.
  auto p0 = tree.predict_proba({0.0, 0.0});
  auto p1 = tree.predict_proba({1.0, 0.0});
  CHECK(p0[0] > 0.9);
  CHECK(p1[1] > 0.9);
}

TEST_CASE("a separable numeric feature forces a split") {
  HoeffdingTreeConfig config;
  HoeffdingTree tree({{FeatureKind::numeric, 0}}, 2, config);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> low(-2.0, 0.5), high(2.0, 0.5);
  for (std::size_t i = 0; i < 10 * config.grace_period; ++i) {
    const std::size_t label = i % 2;
    tree.update({label == 0 ? low(rng) : high(rng)}, label);
  }
  CHECK(tree.node_count() > 1);
  CHECK(tree.predict_proba({-2.0})[0] > 0.8);
  CHECK(tree.predict_proba({2.0})[1] > 0.8);
}

TEST_CASE("constant features never split") {
  HoeffdingTree tree({{FeatureKind::numeric, 0}, {FeatureKind::nominal, 3}}, 2);
  for (int i = 0; i < 5000; ++i) tree.update({1.5, 1.0}, static_cast<std::size_t>(i % 2));
  CHECK(tree.node_count() == 1);
}

TEST_CASE("untrained tree answers uniformly") {
  HoeffdingTree tree({{FeatureKind::numeric, 0}}, 4);
  auto p = tree.predict_proba({0.0});
  for (double v : p) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("leaf distribution is Laplace smoothed") {
  HoeffdingTree tree({{FeatureKind::numeric, 0}}, 2);
  for (int i = 0; i < 9; ++i) tree.update({0.0}, 0);
  tree.update({0.0}, 1);
  auto p = tree.predict_proba({0.0});
  CHECK(p[0] == doctest::Approx(10.0 / 12.0));
  CHECK(p[1] == doctest::Approx(2.0 / 12.0));
}

TEST_CASE("node count is nondecreasing and size grows at splits") {
  HoeffdingTreeConfig config;
  config.grace_period = 50;
  HoeffdingTree tree({{FeatureKind::nominal, 3}}, 2, config);
  std::size_t last_nodes = tree.node_count();
  std::size_t size_before_split = tree.size_estimate();
  bool saw_split = false;
  for (int i = 0; i < 2000; ++i) {
    tree.update({static_cast<double>(i % 2)}, static_cast<std::size_t>(i % 2));
    CHECK(tree.node_count() >= last_nodes);
    if (tree.node_count() > last_nodes && !saw_split) {
      saw_split = true;
      CHECK(tree.size_estimate() > size_before_split);
    }
    last_nodes = tree.node_count();
  }
  CHECK(saw_split);
}

TEST_CASE("missing values route to the heaviest branch and are skipped in stats") {
  HoeffdingTreeConfig config;
  config.grace_period = 50;
  HoeffdingTree tree({{FeatureKind::nominal, 3}}, 2, config);
  for (int i = 0; i < 1000; ++i) tree.update({static_cast<double>(i % 2)}, static_cast<std::size_t>(i % 2));
  REQUIRE(tree.node_count() > 1);
  auto p = tree.predict_proba({missing_value});
  CHECK(p.size() == 2);
  CHECK(p[0] + p[1] == doctest::Approx(1.0));
}

TEST_CASE("checkpoint round trip preserves structure and predictions") {
  HoeffdingTreeConfig config;
  config.grace_period = 50;
  HoeffdingTree tree({{FeatureKind::numeric, 0}, {FeatureKind::nominal, 3}}, 2, config);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> low(-1.0, 0.3), high(1.0, 0.3);
  for (int i = 0; i < 600; ++i) {
    const std::size_t label = static_cast<std::size_t>(i % 2);
    tree.update({label == 0 ? low(rng) : high(rng), static_cast<double>(i % 3)}, label);
  }
  auto restored = HoeffdingTree::from_json(tree.to_json());
  CHECK(restored->node_count() == tree.node_count());
  for (double x : {-1.2, -0.2, 0.4, 1.3}) {
    auto a = tree.predict_proba({x, 1.0});
    auto b = restored->predict_proba({x, 1.0});
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-15));
  }
  // Training continues identically after the round trip.
  tree.update({0.5, 0.0}, 1);
  restored->update({0.5, 0.0}, 1);
  CHECK(tree.predict_proba({0.5, 0.0})[1] == doctest::Approx(restored->predict_proba({0.5, 0.0})[1]));
}
