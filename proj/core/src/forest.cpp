#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qupid/forest.hpp"
#include "qupid/rng.hpp"

namespace qupid {

namespace {

struct SplitChoice {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

double gini_from_counts(const std::vector<std::size_t>& counts, std::size_t total) {
  double sum_sq = 0.0;
  for (const std::size_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

int majority_label(const std::vector<std::size_t>& counts) {
  std::size_t best = 0;
  int label = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > best) {
      best = counts[c];
      label = static_cast<int>(c);
    }
  }
  return label;
}

class TreeBuilder {
public:
  TreeBuilder(const FeatureTable& table, const ForestParams& params, int n_classes, Rng& rng)
      : table_(table), params_(params), n_classes_(n_classes), rng_(rng) {
    const std::size_t d = table.n_features();
    mtry_ = params.max_features == MaxFeatures::All
                ? d
                : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));
    feature_pool_.resize(d);
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
  }

  Tree build(std::vector<std::size_t> samples) {
    tree_.nodes.clear();
    grow(std::move(samples), 0);
    return std::move(tree_);
  }

private:
  // Returns the index of the created node.
  std::int32_t grow(std::vector<std::size_t> samples, std::size_t depth) {
    const std::int32_t node_index = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();

    std::vector<std::size_t> counts(n_classes_, 0);
    for (const std::size_t s : samples) counts[static_cast<std::size_t>(table_.labels[s])]++;
    const std::size_t n = samples.size();
    const double node_gini = gini_from_counts(counts, n);
    const int label = majority_label(counts);

    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](std::size_t c) { return c > 0; }) <= 1;
    const bool depth_capped = params_.max_depth.has_value() && depth >= *params_.max_depth;
    if (pure || depth_capped || n < 2 * params_.min_leaf) {
      tree_.nodes[node_index].leaf_label = label;
      return node_index;
    }

    const SplitChoice split = best_split(samples, counts, node_gini);
    if (split.feature < 0) {
      tree_.nodes[node_index].leaf_label = label;
      return node_index;
    }

    std::vector<std::size_t> left, right;
    for (const std::size_t s : samples) {
      (table_.rows.at(s, static_cast<std::size_t>(split.feature)) <= split.threshold ? left : right)
          .push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();

    tree_.nodes[node_index].feature = split.feature;
    tree_.nodes[node_index].threshold = split.threshold;
    tree_.nodes[node_index].leaf_label = label;
    tree_.nodes[node_index].impurity_decrease = split.gain;
    const std::int32_t left_index = grow(std::move(left), depth + 1);
    tree_.nodes[node_index].left = left_index;
    const std::int32_t right_index = grow(std::move(right), depth + 1);
    tree_.nodes[node_index].right = right_index;
    return node_index;
  }

  // Candidate features are a random subset; ties in gain resolve to the
  // smallest feature index, then the smallest threshold.
  SplitChoice best_split(const std::vector<std::size_t>& samples,
                         const std::vector<std::size_t>& parent_counts, double parent_gini) {
    const std::size_t d = table_.n_features();
    for (std::size_t k = 0; k < mtry_; ++k) {
      const std::size_t j = k + rng_.next_below(d - k);
      std::swap(feature_pool_[k], feature_pool_[j]);
    }
    std::sort(feature_pool_.begin(), feature_pool_.begin() + static_cast<std::ptrdiff_t>(mtry_));

    const std::size_t n = samples.size();
    const double parent_cost = static_cast<double>(n) * parent_gini;
    SplitChoice best;
    std::vector<std::pair<double, int>> column;
    column.reserve(n);
    std::vector<std::size_t> left_counts(static_cast<std::size_t>(n_classes_));

    for (std::size_t k = 0; k < mtry_; ++k) {
      const std::size_t f = feature_pool_[k];
      column.clear();
      for (const std::size_t s : samples) {
        column.emplace_back(table_.rows.at(s, f), table_.labels[s]);
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;  // constant feature

      std::fill(left_counts.begin(), left_counts.end(), 0);
      std::size_t n_left = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_counts[static_cast<std::size_t>(column[i].second)]++;
        ++n_left;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        const std::size_t n_right = n - n_left;
        if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;

        double left_sq = 0.0, right_sq = 0.0;
        for (std::size_t c = 0; c < left_counts.size(); ++c) {
          const double lc = static_cast<double>(left_counts[c]);
          const double rc = static_cast<double>(parent_counts[c]) - lc;
          left_sq += lc * lc;
          right_sq += rc * rc;
        }
        const double cost = (static_cast<double>(n_left) - left_sq / static_cast<double>(n_left)) +
                            (static_cast<double>(n_right) - right_sq / static_cast<double>(n_right));
        const double gain = parent_cost - cost;
        if (gain > best.gain + 1e-12) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;  // adjacent doubles: keep both sides non-empty
          best = {gain, static_cast<int>(f), mid};
        }
      }
    }
    if (best.gain <= 1e-12) best.feature = -1;
    return best;
  }

  const FeatureTable& table_;
  const ForestParams& params_;
  int n_classes_;
  Rng& rng_;
  std::size_t mtry_ = 1;
  std::vector<std::size_t> feature_pool_;
  Tree tree_;
};

}  // namespace

void FeatureTable::validate() const {
  if (rows.rows == 0) throw std::invalid_argument("feature table is empty");
  if (labels.size() != rows.rows) throw std::invalid_argument("labels/rows size mismatch");
  for (const double v : rows.data) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  }
  for (const int label : labels) {
    if (label < 0) throw std::invalid_argument("negative class label");
  }
}

ForestModel train_forest(const FeatureTable& table, const ForestParams& params) {
  table.validate();
  if (params.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  const int n_classes = 1 + *std::max_element(table.labels.begin(), table.labels.end());
  const bool single_class =
      std::all_of(table.labels.begin(), table.labels.end(),
                  [&](int l) { return l == table.labels.front(); });
  if (single_class) throw std::invalid_argument("training requires at least two classes");

  ForestModel model;
  model.n_features = table.n_features();
  model.n_classes = n_classes;
  model.trees.reserve(params.n_trees);
  const std::size_t n = table.n_rows();

  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng(Rng::mix(params.seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> bootstrap(n);
    for (auto& s : bootstrap) s = rng.next_below(n);
    TreeBuilder builder(table, params, n_classes, rng);
    model.trees.push_back(builder.build(std::move(bootstrap)));
  }
  return model;
}

int predict_one(const ForestModel& model, const double* row) {
  std::vector<std::size_t> votes(static_cast<std::size_t>(model.n_classes), 0);
  for (const Tree& tree : model.trees) {
    std::int32_t node = 0;
    while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
      const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
      node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    votes[static_cast<std::size_t>(tree.nodes[static_cast<std::size_t>(node)].leaf_label)]++;
  }
  std::size_t best = 0;
  int label = 0;
  for (std::size_t c = 0; c < votes.size(); ++c) {
    if (votes[c] > best) {
      best = votes[c];
      label = static_cast<int>(c);
    }
  }
  return label;
}

std::vector<int> predict(const ForestModel& model, const Matrix& rows) {
  if (rows.cols != model.n_features && rows.rows > 0) {
    throw std::invalid_argument("feature dimension mismatch");
  }
  std::vector<int> out;
  out.reserve(rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    out.push_back(predict_one(model, rows.data.data() + i * rows.cols));
  }
  return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& expected) {
  if (predicted.size() != expected.size()) throw std::invalid_argument("prediction size mismatch");
  if (predicted.empty()) throw std::invalid_argument("accuracy of empty prediction set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == expected[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

std::vector<double> feature_importance(const ForestModel& model) {
  std::vector<double> importance(model.n_features, 0.0);
  for (const Tree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (node.feature >= 0) {
        importance[static_cast<std::size_t>(node.feature)] += node.impurity_decrease;
      }
    }
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return importance;
}

nlohmann::ordered_json ForestModel::to_json() const {
  nlohmann::ordered_json out;
  out["n_features"] = n_features;
  out["n_classes"] = n_classes;
  nlohmann::ordered_json trees_json = nlohmann::ordered_json::array();
  for (const Tree& tree : trees) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const TreeNode& node : tree.nodes) {
      nodes.push_back({{"feature", node.feature},
                       {"threshold", node.threshold},
                       {"left", node.left},
                       {"right", node.right},
                       {"label", node.leaf_label}});
    }
    trees_json.push_back({{"nodes", std::move(nodes)}});
  }
  out["trees"] = std::move(trees_json);
  return out;
}

}  // namespace qupid
