#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qupid/forest.hpp"

using namespace qupid;

namespace {

FeatureTable table_from(const std::vector<std::vector<double>>& rows,
                        const std::vector<int>& labels) {
  FeatureTable t;
  t.rows = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) t.rows.at(i, j) = rows[i][j];
  }
  t.labels = labels;
  return t;
}

}  // namespace

TEST_CASE("a separable line is learned perfectly") {
  const FeatureTable t = table_from({{0.0}, {0.1}, {0.9}, {1.0}}, {0, 0, 1, 1});
  ForestParams params;
  params.n_trees = 30;
  params.seed = 5;
  const ForestModel model = train_forest(t, params);
  const std::vector<int> preds = predict(model, t.rows);
  CHECK(preds == t.labels);
  CHECK(accuracy(preds, t.labels) == 1.0);
  CHECK(model.n_features == 1);
  CHECK(model.n_classes == 2);
}

TEST_CASE("constant features fall back to the majority label") {
  const FeatureTable t = table_from({{1.0}, {1.0}, {1.0}}, {0, 0, 1});
  ForestParams params;
  params.n_trees = 15;
  params.seed = 3;
  const ForestModel model = train_forest(t, params);
  Matrix probe(1, 1, 1.0);
  CHECK(predict(model, probe) == std::vector<int>{0});
}

TEST_CASE("vote ties break toward the smallest label") {
  ForestModel model;
  model.n_features = 1;
  model.n_classes = 3;
  Tree leaf2;
  leaf2.nodes.push_back(TreeNode{});
  leaf2.nodes[0].leaf_label = 2;
  Tree leaf0 = leaf2;
  leaf0.nodes[0].leaf_label = 0;
  model.trees = {leaf2, leaf0};  // one vote each
  Matrix probe(1, 1, 0.0);
  CHECK(predict_one(model, probe.data.data()) == 0);

  Tree leaf1 = leaf2;
  leaf1.nodes[0].leaf_label = 1;
  model.trees = {leaf2, leaf1, leaf1};
  CHECK(predict_one(model, probe.data.data()) == 1);  // majority still wins
}

TEST_CASE("prediction walks splits with left meaning at-most") {
  ForestModel model;
  model.n_features = 1;
  model.n_classes = 2;
  Tree tree;
  TreeNode root;
  root.feature = 0;
  root.threshold = 0.5;
  root.left = 1;
  root.right = 2;
  TreeNode left;
  left.leaf_label = 0;
  TreeNode right;
  right.leaf_label = 1;
  tree.nodes = {root, left, right};
  model.trees = {tree};

  Matrix probes(3, 1, 0.0);
  probes.at(0, 0) = 0.3;
  probes.at(1, 0) = 0.5;  // boundary goes left
  probes.at(2, 0) = 0.7;
  CHECK(predict(model, probes) == std::vector<int>{0, 0, 1});
}

TEST_CASE("training is deterministic in the seed") {
  FeatureTable t = table_from({{0.1, 0.9}, {0.2, 0.8}, {0.3, 0.1}, {0.9, 0.2},
                               {0.8, 0.3}, {0.7, 0.7}, {0.4, 0.6}, {0.6, 0.4}},
                              {0, 0, 0, 1, 1, 1, 0, 1});
  ForestParams params;
  params.n_trees = 25;
  params.seed = 123;
  const ForestModel a = train_forest(t, params);
  const ForestModel b = train_forest(t, params);
  CHECK(a.to_json() == b.to_json());

  params.seed = 124;
  const ForestModel c = train_forest(t, params);
  CHECK(a.to_json() != c.to_json());  // bootstrap and feature sampling moved
}

TEST_CASE("single-class training data is rejected") {
  const FeatureTable t = table_from({{0.0}, {1.0}}, {1, 1});
  ForestParams params;
  CHECK_THROWS_AS(train_forest(t, params), std::invalid_argument);
}

TEST_CASE("empty and mismatched inputs are rejected") {
  const FeatureTable empty = table_from({}, {});
  ForestParams params;
  CHECK_THROWS_AS(train_forest(empty, params), std::invalid_argument);
  CHECK_THROWS_AS(accuracy({1, 0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(accuracy({}, {}), std::invalid_argument);
}

TEST_CASE("accuracy counts exact matches") {
  CHECK(accuracy({1, 0, 2, 1}, {1, 0, 1, 1}) == 0.75);
  CHECK(accuracy({0}, {1}) == 0.0);
}

TEST_CASE("importance concentrates on the splitting feature") {
  // Feature 0 is constant, feature 1 separates the classes.
  const FeatureTable t = table_from(
      {{5.0, 0.0}, {5.0, 0.1}, {5.0, 0.2}, {5.0, 0.8}, {5.0, 0.9}, {5.0, 1.0}},
      {0, 0, 0, 1, 1, 1});
  ForestParams params;
  params.n_trees = 20;
  params.max_features = MaxFeatures::All;
  params.seed = 9;
  const ForestModel model = train_forest(t, params);
  const std::vector<double> imp = feature_importance(model);
  REQUIRE(imp.size() == 2);
  CHECK(imp[0] == 0.0);
  CHECK(imp[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("importances are a probability vector when any split exists") {
  const FeatureTable t = table_from({{0.0, 0.3}, {0.2, 0.9}, {0.8, 0.4}, {1.0, 0.8},
                                     {0.1, 0.6}, {0.9, 0.5}},
                                    {0, 0, 1, 1, 0, 1});
  ForestParams params;
  params.n_trees = 40;
  params.seed = 21;
  const ForestModel model = train_forest(t, params);
  const std::vector<double> imp = feature_importance(model);
  double total = 0.0;
  for (double v : imp) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("depth-zero forests are all leaves") {
  const FeatureTable t = table_from({{0.0}, {0.2}, {0.8}, {1.0}}, {0, 0, 1, 1});
  ForestParams params;
  params.n_trees = 10;
  params.max_depth = 0;
  params.seed = 2;
  const ForestModel model = train_forest(t, params);
  for (const Tree& tree : model.trees) {
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].feature == -1);
  }
  const std::vector<double> imp = feature_importance(model);
  CHECK(imp == std::vector<double>{0.0});
}

TEST_CASE("min leaf blocks unbalanced splits") {
  const FeatureTable t = table_from({{0.0}, {1.0}, {2.0}, {3.0}}, {0, 0, 1, 1});
  ForestParams params;
  params.n_trees = 10;
  params.min_leaf = 2;
  params.seed = 6;
  const ForestModel model = train_forest(t, params);
  for (const Tree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (node.feature >= 0) {
        // Only the midpoint split leaves two on each side.
        CHECK(node.threshold > 0.0);
        CHECK(node.threshold < 3.0);
      }
    }
  }
}

TEST_CASE("model json carries the shape") {
  const FeatureTable t = table_from({{0.0}, {1.0}, {0.1}, {0.9}}, {0, 1, 0, 1});
  ForestParams params;
  params.n_trees = 3;
  params.seed = 8;
  const ForestModel model = train_forest(t, params);
  const auto j = model.to_json();
  CHECK(j["n_features"] == 1);
  CHECK(j["n_classes"] == 2);
  CHECK(j["trees"].size() == 3);
}
