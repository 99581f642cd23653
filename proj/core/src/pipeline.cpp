#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qupid/csv.hpp"
#include "qupid/pipeline.hpp"
#include "qupid/rng.hpp"

namespace qupid {

namespace {

nlohmann::ordered_json alpha_json(const std::pair<double, double>& alpha) {
  return nlohmann::ordered_json::array({alpha.first, alpha.second});
}

FeatureTable slice_table(const FeatureTable& full, const std::vector<std::size_t>& rows) {
  FeatureTable out;
  out.rows = Matrix(rows.size(), full.rows.cols);
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t src = rows[i];
    std::copy_n(full.rows.data.begin() + static_cast<std::ptrdiff_t>(src * full.rows.cols),
                full.rows.cols,
                out.rows.data.begin() + static_cast<std::ptrdiff_t>(i * full.rows.cols));
    out.labels.push_back(full.labels[src]);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json out;
  out["grid"] = std::to_string(grid_rows) + "x" + std::to_string(grid_cols);
  out["scaling"] = to_string(scaling);
  out["alpha"] = alpha_json(alpha);
  nlohmann::ordered_json cands = nlohmann::ordered_json::array();
  for (const auto& c : alpha_candidates) cands.push_back(alpha_json(c));
  out["alpha_candidates"] = std::move(cands);
  nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
  for (const TransformKind& t : transforms) kinds.push_back(t.name());
  out["transforms"] = std::move(kinds);
  out["essential"] = clamp_essential ? "clamp" : "drop";
  out["train_ratio"] = train_ratio;
  out["repeats"] = repeats;
  out["cv_folds"] = cv_folds;
  out["n_trees"] = n_trees;
  out["seed"] = seed;
  out["jobs"] = jobs;
  return out;
}

void DiagramStore::add_slot(const std::string& name, int degree) {
  if (!items_.empty()) throw std::logic_error("slots must be declared before items");
  slot_names_.push_back(name);
  slot_degrees_.push_back(degree);
}

void DiagramStore::add_item(int label, std::vector<PersistenceDiagram> diagrams) {
  if (diagrams.size() != slot_names_.size()) {
    throw std::invalid_argument("item has wrong number of diagram slots");
  }
  labels_.push_back(label);
  items_.push_back(std::move(diagrams));
  is_test_.push_back(false);
}

const PersistenceDiagram& DiagramStore::diagram(std::size_t item, std::size_t slot) const {
  if (fitting_ && is_test_[item]) ++test_reads_;
  return items_[item][slot];
}

void DiagramStore::begin_fit(const std::vector<std::size_t>& test_items) {
  std::fill(is_test_.begin(), is_test_.end(), false);
  for (const std::size_t i : test_items) is_test_[i] = true;
  fitting_ = true;
}

void DiagramStore::end_fit() { fitting_ = false; }

void save_diagram_store(const DiagramStore& store, const std::filesystem::path& dir,
                        const nlohmann::ordered_json& config) {
  std::map<int, std::size_t> next_index;
  for (std::size_t i = 0; i < store.n_items(); ++i) {
    const int label = store.labels()[i];
    const std::size_t index = next_index[label]++;
    for (std::size_t s = 0; s < store.n_slots(); ++s) {
      const std::filesystem::path path =
          dir / "diagrams" / std::to_string(label) /
          (std::to_string(index) + "_" + store.slot_names()[s] + ".csv");
      save_diagram_csv(store.diagram(i, s), path);
    }
  }
  nlohmann::ordered_json manifest;
  manifest["config"] = config;
  nlohmann::ordered_json slots = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < store.n_slots(); ++s) {
    slots.push_back({{"name", store.slot_names()[s]}, {"degree", store.slot_degrees()[s]}});
  }
  manifest["slots"] = std::move(slots);
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [label, count] : next_index) counts[std::to_string(label)] = count;
  manifest["counts"] = counts;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

DiagramStore load_diagram_store(const std::filesystem::path& dir,
                                nlohmann::ordered_json* manifest_out) {
  const auto manifest = nlohmann::ordered_json::parse(read_text_file(dir / "manifest.json"));
  if (manifest_out != nullptr) *manifest_out = manifest;

  DiagramStore store;
  for (const auto& slot : manifest.at("slots")) {
    store.add_slot(slot.at("name").get<std::string>(), slot.at("degree").get<int>());
  }
  std::map<int, std::size_t> counts;
  for (const auto& [label, count] : manifest.at("counts").items()) {
    counts[std::stoi(label)] = count.get<std::size_t>();
  }
  for (const auto& [label, count] : counts) {
    for (std::size_t index = 0; index < count; ++index) {
      std::vector<PersistenceDiagram> diagrams;
      for (std::size_t s = 0; s < store.n_slots(); ++s) {
        const std::filesystem::path path =
            dir / "diagrams" / std::to_string(label) /
            (std::to_string(index) + "_" + store.slot_names()[s] + ".csv");
        diagrams.push_back(load_diagram_csv(path, store.slot_degrees()[s]));
      }
      store.add_item(label, std::move(diagrams));
    }
  }
  return store;
}

std::vector<PersistenceDiagram> compute_cloud_diagrams(const PointCloud& cloud, double max_scale) {
  std::vector<PersistenceDiagram> out;
  out.push_back(rips_h0(cloud));
  out.push_back(rips_h1(cloud, max_scale));
  return out;
}

std::vector<std::pair<std::string, int>> cloud_slot_layout() {
  return {{"h0", 0}, {"h1", 1}};
}

std::vector<PersistenceDiagram> compute_graph_diagrams(const WeightedGraph& graph,
                                                       const std::vector<double>& times,
                                                       EssentialPolicy policy) {
  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());

  // One (sublevel, superlevel) pair per time, then reshuffled into slot
  // order: degree, direction, time.
  std::vector<GraphDiagrams> sub, super;
  for (const double t : sorted_times) {
    const VertexFunction f = hks(graph, t);
    sub.push_back(graph_sublevel_persistence(graph, f, policy));
    super.push_back(graph_superlevel_persistence(graph, f, policy));
  }
  std::vector<PersistenceDiagram> out;
  for (int degree = 0; degree <= 1; ++degree) {
    for (int direction = 0; direction <= 1; ++direction) {
      for (std::size_t k = 0; k < sorted_times.size(); ++k) {
        const GraphDiagrams& pair = direction == 0 ? sub[k] : super[k];
        out.push_back(degree == 0 ? pair.h0 : pair.h1);
      }
    }
  }
  return out;
}

std::vector<std::pair<std::string, int>> graph_slot_layout(const std::vector<double>& times) {
  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());
  std::vector<std::pair<std::string, int>> out;
  for (int degree = 0; degree <= 1; ++degree) {
    for (const char* direction : {"sub", "super"}) {
      for (const double t : sorted_times) {
        out.emplace_back("h" + std::to_string(degree) + "_" + direction + "_t" + format_double(t),
                         degree);
      }
    }
  }
  return out;
}

std::vector<BPPoint> birth_persistence_points(const PersistenceDiagram& diagram,
                                              bool clamp_essential) {
  if (!clamp_essential) return to_birth_persistence(diagram, InfinitePolicy::drop());
  double clamp = -kInfiniteDeath;
  for (const DiagramPoint& pt : diagram.points) {
    clamp = std::max(clamp, pt.has_infinite_death() ? pt.birth : pt.death);
  }
  if (diagram.points.empty()) return {};
  return to_birth_persistence(diagram, InfinitePolicy::clamp_to(clamp));
}

std::vector<GridSpec> fit_grids(const DiagramStore& store,
                                const std::vector<std::size_t>& train_items,
                                const PipelineConfig& config) {
  std::vector<GridSpec> grids;
  grids.reserve(store.n_slots());
  for (std::size_t s = 0; s < store.n_slots(); ++s) {
    std::vector<BPPoint> points;
    for (const std::size_t item : train_items) {
      const std::vector<BPPoint> pts =
          birth_persistence_points(store.diagram(item, s), config.clamp_essential);
      points.insert(points.end(), pts.begin(), pts.end());
    }
    if (points.empty()) {
      // Slot carries no mass anywhere in the train split; any valid grid
      // yields all-zero features, so use a unit placeholder range.
      points = {{0.0, 0.0}, {1.0, 1.0}};
    }
    grids.push_back(config.scaling == GridScaling::Uniform
                        ? build_uniform_grid(points, config.grid_rows, config.grid_cols)
                        : build_log_grid(points, config.grid_rows, config.grid_cols,
                                         config.alpha));
  }
  return grids;
}

VectorizedDataset vectorize_items(const DiagramStore& store, const std::vector<std::size_t>& items,
                                  const std::vector<GridSpec>& slot_grids,
                                  const TransformKind& kind, bool clamp_essential,
                                  std::size_t jobs) {
  if (slot_grids.size() != store.n_slots()) {
    throw std::invalid_argument("one grid per slot required");
  }
  std::vector<FeatureVector> rows(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    const std::size_t item = items[i];
    std::vector<FeatureVector> parts;
    std::vector<std::string> prefixes;
    for (std::size_t s = 0; s < store.n_slots(); ++s) {
      std::vector<BPPoint> pts = birth_persistence_points(store.diagram(item, s), clamp_essential);
      QuantizedMeasure measure = quantize_points(pts, slot_grids[s]);
      parts.push_back(apply(measure, kind));
      prefixes.push_back(store.slot_names()[s] + "_" + kind.name());
    }
    rows[i] = concat_features(parts, prefixes);
  });

  VectorizedDataset out;
  if (items.empty()) return out;
  out.layout = rows.front().layout;
  const std::size_t d = rows.front().values.size();
  out.table.rows = Matrix(items.size(), d);
  out.table.labels.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (rows[i].values.size() != d) throw std::logic_error("inconsistent feature lengths");
    std::copy(rows[i].values.begin(), rows[i].values.end(),
              out.table.rows.data.begin() + static_cast<std::ptrdiff_t>(i * d));
    out.table.labels.push_back(store.labels()[items[i]]);
  }
  return out;
}

AlphaSearchResult grid_search_alpha(const DiagramStore& store, const PipelineConfig& config,
                                    const TransformKind& kind,
                                    const std::vector<std::pair<double, double>>& candidates,
                                    const std::vector<std::size_t>& train_items,
                                    std::uint64_t seed) {
  if (candidates.empty()) throw std::invalid_argument("alpha search needs candidates");

  std::vector<int> train_labels;
  train_labels.reserve(train_items.size());
  for (const std::size_t item : train_items) train_labels.push_back(store.labels()[item]);
  const auto folds = k_fold(train_labels, config.cv_folds, Rng::mix(seed, 0xA1FA));

  // Fold index sets in global item indices, shared by every candidate.
  std::vector<std::vector<std::size_t>> fold_val(folds.size()), fold_train(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<bool> in_fold(train_items.size(), false);
    for (const std::size_t pos : folds[f]) in_fold[pos] = true;
    for (std::size_t pos = 0; pos < train_items.size(); ++pos) {
      (in_fold[pos] ? fold_val[f] : fold_train[f]).push_back(train_items[pos]);
    }
  }

  AlphaSearchResult result;
  for (const auto& candidate : candidates) {
    PipelineConfig cv_config = config;
    cv_config.alpha = candidate;
    std::vector<double> accs;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const std::vector<GridSpec> grids = fit_grids(store, fold_train[f], cv_config);
      const VectorizedDataset train_vec =
          vectorize_items(store, fold_train[f], grids, kind, config.clamp_essential);
      const VectorizedDataset val_vec =
          vectorize_items(store, fold_val[f], grids, kind, config.clamp_essential);
      ForestParams params;
      params.n_trees = config.n_trees;
      params.seed = Rng::mix(Rng::mix(seed, 0xF01D), f);
      const ForestModel model = train_forest(train_vec.table, params);
      accs.push_back(accuracy(predict(model, val_vec.table.rows), val_vec.table.labels));
    }
    result.rows.push_back({candidate, mean_of(accs), sample_stddev(accs)});
  }

  const AlphaSearchResult::Row* best = &result.rows.front();
  for (const auto& row : result.rows) {
    if (row.mean_accuracy > best->mean_accuracy ||
        (row.mean_accuracy == best->mean_accuracy && row.alpha < best->alpha)) {
      best = &row;
    }
  }
  result.best = best->alpha;
  return result;
}

TransformEvaluation evaluate_transform(DiagramStore& store, const PipelineConfig& config,
                                       const TransformKind& kind) {
  TransformEvaluation eval;
  eval.kind = kind;
  const std::size_t reads_before = store.test_reads_during_fit();
  std::vector<std::size_t> all_items(store.n_items());
  std::iota(all_items.begin(), all_items.end(), std::size_t{0});

  for (std::size_t rep = 0; rep < config.repeats; ++rep) {
    const std::uint64_t rep_seed = Rng::mix(config.seed, rep);
    const TrainTestSplit split = split_train_test(store.labels(), config.train_ratio, rep_seed);

    store.begin_fit(split.test);
    std::pair<double, double> alpha = config.alpha;
    if (config.scaling == GridScaling::LogScaled && !config.alpha_candidates.empty()) {
      alpha =
          grid_search_alpha(store, config, kind, config.alpha_candidates, split.train, rep_seed)
              .best;
    }
    PipelineConfig resolved = config;
    resolved.alpha = alpha;
    const std::vector<GridSpec> grids = fit_grids(store, split.train, resolved);
    store.end_fit();

    const VectorizedDataset vec =
        vectorize_items(store, all_items, grids, kind, config.clamp_essential, config.jobs);
    const FeatureTable train_table = slice_table(vec.table, split.train);
    const FeatureTable test_table = slice_table(vec.table, split.test);

    ForestParams params;
    params.n_trees = config.n_trees;
    params.seed = Rng::mix(rep_seed, 0xF0);
    const ForestModel model = train_forest(train_table, params);
    eval.per_repeat.push_back(accuracy(predict(model, test_table.rows), test_table.labels));
    eval.alphas.push_back(alpha);
  }

  eval.mean_accuracy = mean_of(eval.per_repeat);
  eval.std_accuracy = sample_stddev(eval.per_repeat);
  eval.test_reads_during_fit = store.test_reads_during_fit() - reads_before;
  return eval;
}

void save_feature_csv(const FeatureTable& table, const std::vector<std::string>& column_names,
                      const std::filesystem::path& path, const nlohmann::ordered_json& config) {
  if (column_names.size() != table.rows.cols) {
    throw std::invalid_argument("column name count mismatch");
  }
  std::string out = "# " + config.dump() + "\n";
  out += "label";
  for (const std::string& name : column_names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t i = 0; i < table.rows.rows; ++i) {
    out += std::to_string(table.labels[i]);
    for (std::size_t j = 0; j < table.rows.cols; ++j) {
      out += ',';
      out += format_double(table.rows.at(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

LoadedFeatures load_feature_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  LoadedFeatures out;
  std::vector<std::vector<double>> rows;
  bool have_header = false;
  for (const std::string& line : lines) {
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (!have_header) {
      if (cells.empty() || cells.front() != "label") {
        throw std::runtime_error("feature file header must start with 'label'");
      }
      out.column_names.assign(cells.begin() + 1, cells.end());
      have_header = true;
      continue;
    }
    if (cells.size() != out.column_names.size() + 1) {
      throw std::runtime_error("ragged feature row in " + path.string());
    }
    out.table.labels.push_back(std::stoi(cells.front()));
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_double(cells[j]));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("missing feature header in " + path.string());
  out.table.rows = Matrix(rows.size(), out.column_names.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(),
              out.table.rows.data.begin() +
                  static_cast<std::ptrdiff_t>(i * out.table.rows.cols));
  }
  return out;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  const std::size_t n_threads = std::min(jobs, n);
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    threads.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& thread : threads) thread.join();
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double sum_sq = 0.0;
  for (const double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

}  // namespace qupid
