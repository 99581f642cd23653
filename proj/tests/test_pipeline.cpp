#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qupid/pipeline.hpp"
#include "qupid/rng.hpp"

using namespace qupid;
namespace fs = std::filesystem;

namespace {

// Items separable in every bin of a 2x2 grid: class 0 puts one point in the
// low corner, class 1 covers all four corners of the birth-persistence range.
// Any grid built from a stratified train set then yields features where
// three of four bins are 0-vs-1 indicators, so every tree splits perfectly
// whatever feature subset it draws and accuracies are exactly 1.
DiagramStore separable_store(std::size_t per_class) {
  DiagramStore store;
  store.add_slot("h0", 0);
  PersistenceDiagram low;
  low.degree = 0;
  low.points = {{0.0, 0.25}};  // birth-persistence (0, 0.25)
  PersistenceDiagram corners;
  corners.degree = 0;
  corners.points = {{0.0, 0.25}, {0.0, 0.75}, {0.5, 0.75}, {0.5, 1.25}};
  for (std::size_t i = 0; i < per_class; ++i) store.add_item(0, {low});
  for (std::size_t i = 0; i < per_class; ++i) store.add_item(1, {corners});
  return store;
}

PipelineConfig small_config() {
  PipelineConfig config;
  config.grid_rows = 2;
  config.grid_cols = 2;
  config.scaling = GridScaling::Uniform;
  config.train_ratio = 0.7;
  config.repeats = 2;
  config.cv_folds = 2;
  config.n_trees = 15;
  config.seed = 5;
  return config;
}

}  // namespace

TEST_CASE("slot layouts") {
  const auto clouds = cloud_slot_layout();
  REQUIRE(clouds.size() == 2);
  CHECK(clouds[0] == std::pair<std::string, int>{"h0", 0});
  CHECK(clouds[1] == std::pair<std::string, int>{"h1", 1});

  const auto graphs = graph_slot_layout({10.0, 0.1});
  REQUIRE(graphs.size() == 8);
  CHECK(graphs[0].first == "h0_sub_t0.1");
  CHECK(graphs[1].first == "h0_sub_t10");
  CHECK(graphs[2].first == "h0_super_t0.1");
  CHECK(graphs[3].first == "h0_super_t10");
  CHECK(graphs[4].first == "h1_sub_t0.1");
  CHECK(graphs[7].first == "h1_super_t10");
  CHECK(graphs[0].second == 0);
  CHECK(graphs[7].second == 1);
}

TEST_CASE("diagram store counts test reads only inside the fit window") {
  DiagramStore store = separable_store(2);
  CHECK(store.n_items() == 4);
  CHECK(store.n_slots() == 1);
  CHECK(store.test_reads_during_fit() == 0);

  store.diagram(3, 0);  // outside any fit window
  CHECK(store.test_reads_during_fit() == 0);

  store.begin_fit({3});
  store.diagram(0, 0);
  store.diagram(1, 0);
  CHECK(store.test_reads_during_fit() == 0);
  store.diagram(3, 0);
  CHECK(store.test_reads_during_fit() == 1);
  store.end_fit();

  store.diagram(3, 0);
  CHECK(store.test_reads_during_fit() == 1);
}

TEST_CASE("diagram store round trips through its directory layout") {
  const fs::path dir = fs::temp_directory_path() / "qupid_test_store";
  fs::remove_all(dir);

  DiagramStore store;
  store.add_slot("h0", 0);
  store.add_slot("h1", 1);
  PersistenceDiagram h0a;
  h0a.degree = 0;
  h0a.points = {{0.0, 0.5}, {0.0, kInfiniteDeath}};
  PersistenceDiagram h1a;
  h1a.degree = 1;
  h1a.points = {{0.25, 1.0 / 3.0}};
  PersistenceDiagram h0b;
  h0b.degree = 0;
  h0b.points = {{0.125, 0.7}};
  PersistenceDiagram h1b;
  h1b.degree = 1;
  h1b.points = {};
  store.add_item(0, {h0a, h1a});
  store.add_item(1, {h0b, h1b});

  const nlohmann::ordered_json config = {{"max_scale", 0.5}};
  save_diagram_store(store, dir, config);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "diagrams" / "0" / "0_h0.csv"));
  CHECK(fs::exists(dir / "diagrams" / "1" / "0_h1.csv"));

  nlohmann::ordered_json manifest;
  const DiagramStore back = load_diagram_store(dir, &manifest);
  CHECK(back.slot_names() == store.slot_names());
  CHECK(back.slot_degrees() == store.slot_degrees());
  CHECK(back.labels() == store.labels());
  CHECK(same_multiset(back.diagram(0, 0), h0a));
  CHECK(same_multiset(back.diagram(0, 1), h1a));
  CHECK(same_multiset(back.diagram(1, 0), h0b));
  CHECK(same_multiset(back.diagram(1, 1), h1b));
  CHECK(manifest["config"]["max_scale"] == 0.5);
  fs::remove_all(dir);
}

TEST_CASE("essential points clamp to the diagram's own maximum death") {
  PersistenceDiagram d;
  d.points = {{0.0, 1.0}, {0.2, kInfiniteDeath}};
  const auto dropped = birth_persistence_points(d, false);
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0].p == 1.0);

  const auto clamped = birth_persistence_points(d, true);
  REQUIRE(clamped.size() == 2);
  CHECK(clamped[1].b == 0.2);
  CHECK(clamped[1].p == 1.0 - 0.2);

  PersistenceDiagram only_essential;
  only_essential.points = {{2.0, kInfiniteDeath}};
  const auto pinned = birth_persistence_points(only_essential, true);
  REQUIRE(pinned.size() == 1);
  CHECK(pinned[0].b == 2.0);
  CHECK(pinned[0].p == 0.0);
}

TEST_CASE("grids are fitted from the train items only") {
  DiagramStore store;
  store.add_slot("h0", 0);
  PersistenceDiagram small;
  small.points = {{0.0, 0.3}, {0.0, 0.5}};
  PersistenceDiagram big;
  big.points = {{0.0, 100.0}};
  store.add_item(0, {small});
  store.add_item(0, {small});
  store.add_item(1, {big});

  const PipelineConfig config = small_config();
  const std::vector<GridSpec> grids = fit_grids(store, {0, 1}, config);
  REQUIRE(grids.size() == 1);
  CHECK(grids[0].p_edges.back() <= 0.5);  // excluded test item reaches 100
  CHECK(grids[0].bins_b() == 2);

  // A slot with no surviving train points falls back to a placeholder range.
  DiagramStore empty_store;
  empty_store.add_slot("h1", 1);
  PersistenceDiagram none;
  none.degree = 1;
  empty_store.add_item(0, {none});
  const std::vector<GridSpec> fallback = fit_grids(empty_store, {0}, config);
  CHECK(fallback[0].b_edges.front() == 0.0);
  CHECK_NOTHROW(fallback[0].validate());
}

TEST_CASE("vectorization names columns by slot, transform and segment") {
  DiagramStore store = separable_store(2);
  PipelineConfig config = small_config();
  config.grid_rows = 4;
  config.grid_cols = 4;
  const std::vector<std::size_t> all = {0, 1, 2, 3};
  const std::vector<GridSpec> grids = fit_grids(store, all, config);

  const VectorizedDataset vec =
      vectorize_items(store, all, grids, TransformKind::identity(), false);
  CHECK(vec.table.n_rows() == 4);
  CHECK(vec.table.n_features() == 16);
  const auto names = vec.layout.column_names();
  CHECK(names[0] == "h0_id_id_0_0");
  CHECK(names[15] == "h0_id_id_3_3");
  CHECK(vec.table.labels == store.labels());

  // Total mass separates the classes by construction.
  double mass0 = 0.0;
  double mass3 = 0.0;
  for (std::size_t j = 0; j < 16; ++j) {
    mass0 += vec.table.rows.at(0, j);
    mass3 += vec.table.rows.at(3, j);
  }
  CHECK(mass0 == 1.0);
  CHECK(mass3 == 4.0);
}

TEST_CASE("parallel vectorization matches sequential exactly") {
  DiagramStore store = separable_store(6);
  const PipelineConfig config = small_config();
  std::vector<std::size_t> all(store.n_items());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::vector<GridSpec> grids = fit_grids(store, all, config);

  const VectorizedDataset seq =
      vectorize_items(store, all, grids, TransformKind::coiflet(1), false, 1);
  const VectorizedDataset par =
      vectorize_items(store, all, grids, TransformKind::coiflet(1), false, 4);
  CHECK(seq.table.rows == par.table.rows);
  CHECK(seq.table.labels == par.table.labels);
}

TEST_CASE("alpha search scores candidates and breaks ties low") {
  DiagramStore store = separable_store(12);
  PipelineConfig config = small_config();
  config.scaling = GridScaling::LogScaled;
  config.n_trees = 10;

  const std::vector<std::size_t> train = {0, 1, 2,  3,  4,  5,  6,  7,
                                          12, 13, 14, 15, 16, 17, 18, 19};
  const std::vector<std::pair<double, double>> candidates = {{10.0, 10.0}, {1.0, 1.0}};
  const AlphaSearchResult result =
      grid_search_alpha(store, config, TransformKind::identity(), candidates, train, 99);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].alpha == candidates[0]);
  CHECK(result.rows[1].alpha == candidates[1]);
  // Mass separation makes every candidate perfect, so the tie goes to the
  // lexicographically smaller alpha.
  CHECK(result.rows[0].mean_accuracy == 1.0);
  CHECK(result.rows[1].mean_accuracy == 1.0);
  CHECK(result.best == std::pair<double, double>{1.0, 1.0});

  const AlphaSearchResult again =
      grid_search_alpha(store, config, TransformKind::identity(), candidates, train, 99);
  CHECK(again.best == result.best);
  CHECK(again.rows[0].mean_accuracy == result.rows[0].mean_accuracy);
}

TEST_CASE("transform evaluation runs the full per-repeat protocol") {
  DiagramStore store = separable_store(10);
  const PipelineConfig config = small_config();
  const TransformEvaluation eval = evaluate_transform(store, config, TransformKind::identity());
  CHECK(eval.kind == TransformKind::identity());
  REQUIRE(eval.per_repeat.size() == 2);
  CHECK(eval.mean_accuracy == 1.0);
  CHECK(eval.std_accuracy == 0.0);
  CHECK(eval.test_reads_during_fit == 0);
  REQUIRE(eval.alphas.size() == 2);
  CHECK(eval.alphas[0] == config.alpha);
}

TEST_CASE("evaluation with alpha search still never reads test diagrams") {
  DiagramStore store = separable_store(8);
  PipelineConfig config = small_config();
  config.scaling = GridScaling::LogScaled;
  config.alpha_candidates = {{1.0, 1.0}, {500.0, 500.0}};
  config.repeats = 1;
  const TransformEvaluation eval = evaluate_transform(store, config, TransformKind::daubechies(1));
  CHECK(eval.test_reads_during_fit == 0);
  REQUIRE(eval.alphas.size() == 1);
  // Both candidates score a perfect 1.0, so the tie resolves to the
  // lexicographically smaller pair.
  CHECK(eval.alphas[0] == config.alpha_candidates[0]);
}

TEST_CASE("feature csv round trips") {
  const fs::path path = fs::temp_directory_path() / "qupid_test_features.csv";
  FeatureTable table;
  table.rows = Matrix(2, 3);
  table.rows.at(0, 0) = 1.0 / 3.0;
  table.rows.at(0, 2) = -2.5;
  table.rows.at(1, 1) = 1e-17;
  table.labels = {0, 4};
  const std::vector<std::string> names = {"a_0_0", "a_0_1", "a_1_0"};
  save_feature_csv(table, names, path, nlohmann::ordered_json{{"seed", 7}});

  const LoadedFeatures back = load_feature_csv(path);
  CHECK(back.column_names == names);
  CHECK(back.table.labels == table.labels);
  CHECK(back.table.rows == table.rows);  // format_double is round-trip exact
}

TEST_CASE("parallel_for covers every index exactly once in any mode") {
  for (const std::size_t jobs : {std::size_t{1}, std::size_t{3}, std::size_t{8}}) {
    std::vector<int> hits(50, 0);
    parallel_for(50, jobs, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("parallel_for rethrows the smallest failing index") {
  try {
    parallel_for(10, 4, [](std::size_t i) {
      if (i == 3 || i == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "3");
  }
}

TEST_CASE("summary statistics") {
  CHECK(mean_of({1.0, 2.0, 3.0, 4.0}) == 2.5);
  CHECK(sample_stddev({1.0, 2.0, 3.0, 4.0}) ==
        doctest::Approx(1.2909944487358056).epsilon(1e-12));
  CHECK(sample_stddev({5.0}) == 0.0);
}

TEST_CASE("config json echoes settings but no paths") {
  PipelineConfig config = small_config();
  config.transforms = {TransformKind::identity(), TransformKind::coiflet(2)};
  const nlohmann::ordered_json j = config.to_json();
  CHECK(j["grid"] == "2x2");
  CHECK(j["scaling"] == "uniform");
  CHECK(j["seed"] == 5);
  CHECK(j["transforms"][1] == "coif2");
  CHECK(j["essential"] == "drop");
  const std::string dump = j.dump();
  CHECK(dump.find("path") == std::string::npos);
  CHECK(dump.find("dir") == std::string::npos);
}

TEST_CASE("store rejects malformed items") {
  DiagramStore store;
  store.add_slot("h0", 0);
  store.add_item(0, {PersistenceDiagram{}});
  CHECK_THROWS_AS(store.add_item(0, {PersistenceDiagram{}, PersistenceDiagram{}}),
                  std::invalid_argument);
}
