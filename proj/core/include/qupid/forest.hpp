#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qupid/grid.hpp"

namespace qupid {

struct FeatureTable {
  Matrix rows;              // n x d
  std::vector<int> labels;  // class indices in [0, n_classes)

  std::size_t n_rows() const { return rows.rows; }
  std::size_t n_features() const { return rows.cols; }
  /// Throws on size mismatch, non-finite entries or an empty table.
  void validate() const;
};

enum class MaxFeatures { Sqrt, All };

struct ForestParams {
  std::size_t n_trees = 100;
  MaxFeatures max_features = MaxFeatures::Sqrt;
  std::size_t min_leaf = 1;
  std::optional<std::size_t> max_depth;
  std::uint64_t seed = 0;
};

/// Flat binary tree; node 0 is the root. Leaves have feature == -1.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  int leaf_label = -1;
  double impurity_decrease = 0.0;  // n_node * gini - sum of child parts
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct ForestModel {
  std::vector<Tree> trees;
  std::size_t n_features = 0;
  int n_classes = 0;

  nlohmann::ordered_json to_json() const;
};

/// Bagged CART trees: bootstrap of size n per tree, Gini impurity splits over
/// a per-node random feature subset, thresholds at midpoints of consecutive
/// sorted unique values. Deterministic for a fixed (data, params, seed).
ForestModel train_forest(const FeatureTable& table, const ForestParams& params);

/// Majority vote across trees; ties go to the smallest label index.
int predict_one(const ForestModel& model, const double* row);
std::vector<int> predict(const ForestModel& model, const Matrix& rows);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& expected);

/// Total Gini impurity decrease attributed to each feature, weighted by node
/// sample counts and normalized to sum 1. All zeros when no tree ever split.
std::vector<double> feature_importance(const ForestModel& model);

}  // namespace qupid
