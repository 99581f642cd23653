#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qupid/datasets.hpp"
#include "qupid/eval.hpp"
#include "qupid/forest.hpp"
#include "qupid/homology.hpp"
#include "qupid/quantize.hpp"
#include "qupid/transforms.hpp"

namespace qupid {

/// Everything a classification run needs, resolved to concrete values.
/// Serialized into every output file so results are self-describing.
struct PipelineConfig {
  std::size_t grid_rows = 32;
  std::size_t grid_cols = 32;
  GridScaling scaling = GridScaling::LogScaled;
  std::pair<double, double> alpha{500.0, 500.0};
  /// Non-empty: per-repeat cross-validated search over these candidates on
  /// the train split; `alpha` is then ignored.
  std::vector<std::pair<double, double>> alpha_candidates;
  std::vector<TransformKind> transforms;
  bool clamp_essential = false;  // false: drop infinite-death points
  double train_ratio = 0.7;
  std::size_t repeats = 3;
  std::size_t cv_folds = 3;
  std::size_t n_trees = 100;
  std::uint64_t seed = 7;
  std::size_t jobs = 1;

  nlohmann::ordered_json to_json() const;
};

/// Labeled collection of diagram tuples: item i holds one diagram per slot
/// (clouds: h0, h1; graphs: one per degree x direction x diffusion time).
///
/// Access is instrumented: between begin_fit and end_fit, reads of items
/// marked as test are counted, so the no-test-leakage contract of grid
/// fitting and alpha search is checkable, not just asserted. Fitting is
/// single-threaded; parallel reads are fine outside the fit window.
class DiagramStore {
 public:
  void add_slot(const std::string& name, int degree);
  void add_item(int label, std::vector<PersistenceDiagram> diagrams);

  std::size_t n_items() const { return items_.size(); }
  std::size_t n_slots() const { return slot_names_.size(); }
  const std::vector<std::string>& slot_names() const { return slot_names_; }
  const std::vector<int>& slot_degrees() const { return slot_degrees_; }
  const std::vector<int>& labels() const { return labels_; }

  const PersistenceDiagram& diagram(std::size_t item, std::size_t slot) const;

  void begin_fit(const std::vector<std::size_t>& test_items);
  void end_fit();
  std::size_t test_reads_during_fit() const { return test_reads_; }

 private:
  std::vector<std::string> slot_names_;
  std::vector<int> slot_degrees_;
  std::vector<int> labels_;
  std::vector<std::vector<PersistenceDiagram>> items_;
  std::vector<bool> is_test_;
  bool fitting_ = false;
  mutable std::size_t test_reads_ = 0;
};

/// Directory layout: diagrams/{label}/{index}_{slot}.csv + manifest.json
/// (slot names/degrees, per-label counts, config echo).
void save_diagram_store(const DiagramStore& store, const std::filesystem::path& dir,
                        const nlohmann::ordered_json& config);
DiagramStore load_diagram_store(const std::filesystem::path& dir,
                                nlohmann::ordered_json* manifest_out = nullptr);

/// Rips diagrams of one cloud, slots [h0, h1].
std::vector<PersistenceDiagram> compute_cloud_diagrams(const PointCloud& cloud, double max_scale);
std::vector<std::pair<std::string, int>> cloud_slot_layout();

/// HKS sublevel/superlevel diagrams of one graph: for each degree, direction
/// (sublevel first) and diffusion time, in that nesting order.
std::vector<PersistenceDiagram> compute_graph_diagrams(const WeightedGraph& graph,
                                                       const std::vector<double>& times,
                                                       EssentialPolicy policy);
std::vector<std::pair<std::string, int>> graph_slot_layout(const std::vector<double>& times);

/// Birth-persistence coordinates with the configured essential handling:
/// drop, or clamp to the diagram's own maximum death (its birth for a
/// diagram with no finite deaths).
std::vector<BPPoint> birth_persistence_points(const PersistenceDiagram& diagram,
                                              bool clamp_essential);

/// One grid per slot, fitted from the birth-persistence ranges of the train
/// items only.
std::vector<GridSpec> fit_grids(const DiagramStore& store,
                                const std::vector<std::size_t>& train_items,
                                const PipelineConfig& config);

struct VectorizedDataset {
  FeatureTable table;
  FeatureLayout layout;
};

/// Quantize + transform every listed item against per-slot grids and
/// concatenate slot blocks. Rows follow the order of `items`; column names
/// are {slot}_{transform}_{segment}_{i}_{j}.
VectorizedDataset vectorize_items(const DiagramStore& store,
                                  const std::vector<std::size_t>& items,
                                  const std::vector<GridSpec>& slot_grids,
                                  const TransformKind& kind, bool clamp_essential,
                                  std::size_t jobs = 1);

struct AlphaSearchResult {
  struct Row {
    std::pair<double, double> alpha;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
  };
  std::pair<double, double> best{0.0, 0.0};
  std::vector<Row> rows;  // one per candidate, input order
};

/// Cross-validated choice of the log-rescale parameter on the train items:
/// each candidate rebuilds grids on every CV-train fold and scores on the
/// held-out fold. Highest mean accuracy wins; exact ties go to the smallest
/// (alpha1, alpha2) lexicographically.
AlphaSearchResult grid_search_alpha(const DiagramStore& store, const PipelineConfig& config,
                                    const TransformKind& kind,
                                    const std::vector<std::pair<double, double>>& candidates,
                                    const std::vector<std::size_t>& train_items,
                                    std::uint64_t seed);

struct TransformEvaluation {
  TransformKind kind;
  std::vector<double> per_repeat;
  std::vector<std::pair<double, double>> alphas;  // the alpha each repeat used
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation over repeats
  std::size_t test_reads_during_fit = 0;
};

/// Full protocol for one transform: per repeat, a stratified split, grid
/// fitting (and optional alpha search) on train only, then forest training
/// and a test-set score. Per-repeat seeds derive from (config seed, repeat).
TransformEvaluation evaluate_transform(DiagramStore& store, const PipelineConfig& config,
                                       const TransformKind& kind);

/// Feature file: a `# {config json}` comment line, a header line
/// `label,{column names}`, then one row per item.
void save_feature_csv(const FeatureTable& table, const std::vector<std::string>& column_names,
                      const std::filesystem::path& path, const nlohmann::ordered_json& config);

struct LoadedFeatures {
  FeatureTable table;
  std::vector<std::string> column_names;
};
LoadedFeatures load_feature_csv(const std::filesystem::path& path);

/// Runs fn(i) for i in [0, n), spread over `jobs` threads (inline if 1).
/// fn must be pure per item; any thrown exception is rethrown, smallest
/// index first.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

double mean_of(const std::vector<double>& values);
double sample_stddev(const std::vector<double>& values);

}  // namespace qupid
