// Command-line front end: dataset generation, persistence computation,
// vectorization, classification, timing and feature importance, each a
// subcommand with a fully seeded, reproducible configuration.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qupid/csv.hpp"
#include "qupid/pipeline.hpp"
#include "qupid/rng.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qupid;

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 32x32");
  try {
    const std::size_t r = std::stoul(text.substr(0, x));
    const std::size_t s = std::stoul(text.substr(x + 1));
    if (r < 1 || s < 1) throw std::invalid_argument("zero");
    return {r, s};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 32x32");
  }
}

std::pair<double, double> parse_alpha(const std::string& text) {
  const auto cells = split_csv_line(text);
  if (cells.size() != 2) throw CLI::ValidationError("--alpha", "expected two values, e.g. 500,500");
  return {parse_double(cells[0]), parse_double(cells[1])};
}

std::vector<TransformKind> parse_transforms(const std::vector<std::string>& names) {
  std::vector<TransformKind> kinds;
  for (const std::string& name : names) kinds.push_back(TransformKind::parse(name));
  return kinds;
}

void require_output_dir(const std::filesystem::path& dir, bool force) {
  if (std::filesystem::exists(dir) && !std::filesystem::is_empty(dir) && !force) {
    throw std::runtime_error("output directory " + dir.string() +
                             " is not empty (pass --force to overwrite)");
  }
  std::filesystem::create_directories(dir);
}

bool is_cloud_dataset(const std::filesystem::path& dir) {
  if (std::filesystem::is_directory(dir / "clouds")) return true;
  if (std::filesystem::is_directory(dir / "graphs")) return false;
  throw std::runtime_error("no clouds/ or graphs/ under " + dir.string());
}

double run_seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string out;
  std::vector<double> rhos{2.5, 3.5, 4.0, 4.1, 4.3};
  std::vector<std::string> pattern_classes{"circles", "clusters", "uniform"};
  std::size_t per_class = 50;
  std::size_t points = 300;
  double jitter = 0.05;
  double background = 0.1;
  std::uint64_t seed = 7;
  bool force = false;
};

void cmd_generate_orbit(const GenerateArgs& args) {
  require_output_dir(args.out, args.force);
  const LabeledCloudSet set =
      generate_orbit_dataset(args.rhos, args.per_class, args.points, args.seed);
  ordered_json manifest;
  manifest["kind"] = "orbit";
  manifest["rhos"] = args.rhos;
  manifest["per_class"] = args.per_class;
  manifest["points"] = args.points;
  manifest["seed"] = args.seed;
  save_cloud_set(set, args.out, manifest);
  std::cout << "wrote " << set.clouds.size() << " clouds to " << args.out << "\n";
}

void cmd_generate_patterns(const GenerateArgs& args) {
  require_output_dir(args.out, args.force);
  std::vector<PatternClass> classes;
  for (const std::string& name : args.pattern_classes) {
    classes.push_back(pattern_class_from_string(name));
  }
  PatternParams params;
  params.jitter = args.jitter;
  params.background_frac = args.background;
  const LabeledCloudSet set =
      generate_pattern_set(classes, args.per_class, args.points, params, args.seed);
  ordered_json manifest;
  manifest["kind"] = "patterns";
  manifest["classes"] = args.pattern_classes;
  manifest["per_class"] = args.per_class;
  manifest["points"] = args.points;
  manifest["jitter"] = args.jitter;
  manifest["background"] = args.background;
  manifest["seed"] = args.seed;
  save_cloud_set(set, args.out, manifest);
  std::cout << "wrote " << set.clouds.size() << " clouds to " << args.out << "\n";
}

// --- compute-pd -------------------------------------------------------------

struct ComputePdArgs {
  std::string in;
  std::string out;
  double max_scale = 0.5;
  std::vector<double> times{0.1, 10.0};
  std::string essential = "clamp";
  std::size_t jobs = 1;
  bool force = false;
};

void cmd_compute_pd(const ComputePdArgs& args) {
  require_output_dir(args.out, args.force);
  const EssentialPolicy policy =
      args.essential == "drop" ? EssentialPolicy::Drop : EssentialPolicy::ClampToExtremum;

  DiagramStore store;
  ordered_json config;
  if (is_cloud_dataset(args.in)) {
    const LabeledCloudSet set = load_cloud_set(args.in);
    if (set.clouds.empty()) throw std::runtime_error("no clouds under " + args.in);
    for (const auto& [name, degree] : cloud_slot_layout()) store.add_slot(name, degree);
    std::vector<std::vector<PersistenceDiagram>> results(set.clouds.size());
    parallel_for(set.clouds.size(), args.jobs, [&](std::size_t i) {
      results[i] = compute_cloud_diagrams(set.clouds[i], args.max_scale);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      store.add_item(set.labels[i], std::move(results[i]));
    }
    config["input_kind"] = "clouds";
    config["max_scale"] = args.max_scale;
  } else {
    const LabeledGraphSet set = load_graph_set(args.in);
    if (set.graphs.empty()) throw std::runtime_error("no graphs under " + args.in);
    for (const auto& [name, degree] : graph_slot_layout(args.times)) store.add_slot(name, degree);
    std::vector<std::vector<PersistenceDiagram>> results(set.graphs.size());
    parallel_for(set.graphs.size(), args.jobs, [&](std::size_t i) {
      results[i] = compute_graph_diagrams(set.graphs[i], args.times, policy);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      store.add_item(set.labels[i], std::move(results[i]));
    }
    config["input_kind"] = "graphs";
    config["times"] = args.times;
  }
  config["essential"] = args.essential;
  save_diagram_store(store, args.out, config);
  std::cout << "wrote " << store.n_items() << " items x " << store.n_slots() << " diagrams to "
            << args.out << "\n";
}

// --- vectorize --------------------------------------------------------------

struct VectorizeArgs {
  std::string in;
  std::string out;
  std::string transform = "id";
  std::string grid = "32x32";
  std::string scaling = "log";
  std::string alpha = "500,500";
  std::string essential = "drop";
  double split = 0.7;
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
  bool force = false;
};

PipelineConfig vectorize_config(const VectorizeArgs& args) {
  PipelineConfig config;
  const auto [r, s] = parse_grid(args.grid);
  config.grid_rows = r;
  config.grid_cols = s;
  config.scaling = grid_scaling_from_string(args.scaling);
  config.alpha = parse_alpha(args.alpha);
  config.transforms = {TransformKind::parse(args.transform)};
  config.clamp_essential = args.essential == "clamp";
  config.train_ratio = args.split;
  config.seed = args.seed;
  config.jobs = args.jobs;
  return config;
}

void cmd_vectorize(const VectorizeArgs& args) {
  require_output_dir(args.out, args.force);
  const PipelineConfig config = vectorize_config(args);
  const TransformKind kind = config.transforms.front();

  DiagramStore store = load_diagram_store(args.in);
  const TrainTestSplit split =
      split_train_test(store.labels(), config.train_ratio, config.seed);
  store.begin_fit(split.test);
  const std::vector<GridSpec> grids = fit_grids(store, split.train, config);
  store.end_fit();

  std::vector<std::size_t> all_items(store.n_items());
  std::iota(all_items.begin(), all_items.end(), std::size_t{0});
  const VectorizedDataset vec =
      vectorize_items(store, all_items, grids, kind, config.clamp_essential, config.jobs);

  const ordered_json config_json = config.to_json();
  save_feature_csv(vec.table, vec.layout.column_names(), std::filesystem::path(args.out) / "features.csv",
                   config_json);

  ordered_json layout;
  layout["config"] = config_json;
  ordered_json segments = ordered_json::array();
  for (const FeatureSegment& seg : vec.layout.segments) {
    segments.push_back({{"name", seg.name}, {"rows", seg.rows}, {"cols", seg.cols}});
  }
  layout["segments"] = std::move(segments);
  write_text_file(std::filesystem::path(args.out) / "layout.json", layout.dump(2) + "\n");

  ordered_json grids_json;
  grids_json["config"] = config_json;
  grids_json["fitted_on_items"] = split.train;
  ordered_json slots = ordered_json::array();
  for (std::size_t s = 0; s < store.n_slots(); ++s) {
    slots.push_back({{"name", store.slot_names()[s]},
                     {"degree", store.slot_degrees()[s]},
                     {"grid", ordered_json::parse(grid_to_json(grids[s]))}});
  }
  grids_json["slots"] = std::move(slots);
  write_text_file(std::filesystem::path(args.out) / "grids.json", grids_json.dump(2) + "\n");

  std::cout << "wrote " << vec.table.rows.rows << " x " << vec.table.rows.cols
            << " feature matrix to " << args.out << "\n";
}

// --- classify ---------------------------------------------------------------

struct ClassifyArgs {
  std::string in;
  std::string out;
  std::vector<std::string> transforms{"id", "fft", "db1", "db2", "db3",
                                      "coif1", "coif2", "coif3"};
  std::string grid = "32x32";
  std::vector<std::size_t> ablate_grids;
  std::string scaling = "log";
  std::string alpha = "500,500";
  std::vector<std::string> alpha_candidates;
  bool alpha_search = false;
  std::size_t cv_k = 3;
  double split = 0.7;
  std::size_t repeats = 3;
  std::size_t trees = 100;
  std::string essential = "drop";
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
};

void cmd_classify(const ClassifyArgs& args) {
  PipelineConfig config;
  const auto [r, s] = parse_grid(args.grid);
  config.grid_rows = r;
  config.grid_cols = s;
  config.scaling = grid_scaling_from_string(args.scaling);
  config.alpha = parse_alpha(args.alpha);
  for (const std::string& cand : args.alpha_candidates) {
    config.alpha_candidates.push_back(parse_alpha(cand));
  }
  if (args.alpha_search && config.alpha_candidates.empty()) {
    const double levels[] = {1.0, 10.0, 100.0, 500.0, 1000.0};
    for (double a1 : levels) {
      for (double a2 : levels) config.alpha_candidates.push_back({a1, a2});
    }
  }
  config.transforms = parse_transforms(args.transforms);
  config.clamp_essential = args.essential == "clamp";
  config.train_ratio = args.split;
  config.repeats = args.repeats;
  config.cv_folds = args.cv_k;
  config.n_trees = args.trees;
  config.seed = args.seed;
  config.jobs = args.jobs;

  DiagramStore store = load_diagram_store(args.in);

  std::vector<std::pair<std::size_t, std::size_t>> grid_sizes;
  if (args.ablate_grids.empty()) {
    grid_sizes.emplace_back(config.grid_rows, config.grid_cols);
  } else {
    for (const std::size_t n : args.ablate_grids) grid_sizes.emplace_back(n, n);
  }

  ordered_json metrics;
  metrics["config"] = config.to_json();
  ordered_json results = ordered_json::array();
  for (const auto& [rows, cols] : grid_sizes) {
    PipelineConfig grid_config = config;
    grid_config.grid_rows = rows;
    grid_config.grid_cols = cols;
    for (const TransformKind& kind : config.transforms) {
      const TransformEvaluation eval = evaluate_transform(store, grid_config, kind);
      ordered_json row;
      row["grid"] = std::to_string(rows) + "x" + std::to_string(cols);
      row["transform"] = kind.name();
      row["mean_accuracy"] = eval.mean_accuracy;
      row["std_accuracy"] = eval.std_accuracy;
      row["per_repeat"] = eval.per_repeat;
      ordered_json alphas = ordered_json::array();
      for (const auto& a : eval.alphas) alphas.push_back({a.first, a.second});
      row["alphas"] = std::move(alphas);
      row["test_reads_during_fit"] = eval.test_reads_during_fit;
      results.push_back(std::move(row));
      std::cout << results.back()["grid"].get<std::string>() << " " << kind.name() << ": mean "
                << format_double(eval.mean_accuracy) << " +/- "
                << format_double(eval.std_accuracy) << "\n";
    }
  }
  metrics["results"] = std::move(results);
  write_text_file(args.out, metrics.dump(2) + "\n");
  std::cout << "wrote metrics to " << args.out << "\n";
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string out;
  std::vector<std::size_t> sizes{1000, 2000};
  std::string grid = "32x32";
  std::size_t runs = 20;
  std::vector<std::string> transforms{"id", "fft", "coif2"};
  std::uint64_t seed = 7;
};

std::vector<BPPoint> random_bp_points(std::size_t n, Rng& rng) {
  std::vector<BPPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back({rng.next_double(), rng.next_double()});
  }
  return points;
}

void cmd_bench(const BenchArgs& args) {
  const auto [rows, cols] = parse_grid(args.grid);
  Rng rng(args.seed);
  const std::vector<BPPoint> train = random_bp_points(4096, rng);
  const GridSpec grid = build_uniform_grid(train, rows, cols);

  ordered_json out;
  ordered_json config;
  config["sizes"] = args.sizes;
  config["grid"] = args.grid;
  config["runs"] = args.runs;
  config["transforms"] = args.transforms;
  config["seed"] = args.seed;
  out["config"] = std::move(config);

  // Quantization medians per diagram size, plus a log-log linearity slope.
  ordered_json quantize_rows = ordered_json::array();
  std::vector<double> log_sizes, log_times;
  for (const std::size_t size : args.sizes) {
    std::vector<double> times;
    for (std::size_t run = 0; run < args.runs; ++run) {
      const std::vector<BPPoint> points = random_bp_points(size, rng);
      times.push_back(run_seconds([&]() {
        const QuantizedMeasure measure = quantize_points(points, grid);
        if (measure.masses.data.empty()) throw std::logic_error("unreachable");
      }));
    }
    const double median = median_of(times);
    quantize_rows.push_back({{"size", size}, {"median_seconds", median}});
    if (size > 0 && median > 0.0) {
      log_sizes.push_back(std::log(static_cast<double>(size)));
      log_times.push_back(std::log(median));
    }
  }
  out["quantize"] = std::move(quantize_rows);

  double slope = 0.0;
  if (log_sizes.size() >= 2) {
    const double mx = mean_of(log_sizes), my = mean_of(log_times);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_sizes.size(); ++i) {
      num += (log_sizes[i] - mx) * (log_times[i] - my);
      den += (log_sizes[i] - mx) * (log_sizes[i] - mx);
    }
    slope = den > 0.0 ? num / den : 0.0;
  }
  out["quantize_loglog_slope"] = slope;

  // Transform medians at the configured grid and at double the area.
  const GridSpec grid2 = build_uniform_grid(train, rows * 2, cols);
  const std::vector<BPPoint> sample = random_bp_points(1000, rng);
  const QuantizedMeasure measure = quantize_points(sample, grid);
  const QuantizedMeasure measure2 = quantize_points(sample, grid2);
  ordered_json transform_rows = ordered_json::array();
  for (const std::string& name : args.transforms) {
    const TransformKind kind = TransformKind::parse(name);
    auto time_apply = [&](const QuantizedMeasure& m) {
      std::vector<double> times;
      for (std::size_t run = 0; run < args.runs; ++run) {
        times.push_back(run_seconds([&]() {
          const FeatureVector vec = apply(m, kind);
          if (vec.values.empty()) throw std::logic_error("unreachable");
        }));
      }
      return median_of(times);
    };
    const double median = time_apply(measure);
    const double median2 = time_apply(measure2);
    transform_rows.push_back({{"name", name},
                              {"median_seconds", median},
                              {"double_area_median_seconds", median2},
                              {"double_area_ratio", median > 0.0 ? median2 / median : 0.0}});
  }
  out["transforms"] = std::move(transform_rows);

  write_text_file(args.out, out.dump(2) + "\n");
  std::cout << "wrote timings to " << args.out << "\n";
}

// --- importance -------------------------------------------------------------

struct ImportanceArgs {
  std::string in;
  std::string out;
  std::size_t trees = 100;
  std::uint64_t seed = 7;
};

void cmd_importance(const ImportanceArgs& args) {
  const LoadedFeatures loaded =
      load_feature_csv(std::filesystem::path(args.in) / "features.csv");
  const auto layout =
      ordered_json::parse(read_text_file(std::filesystem::path(args.in) / "layout.json"));

  ForestParams params;
  params.n_trees = args.trees;
  params.seed = args.seed;
  const ForestModel model = train_forest(loaded.table, params);
  const std::vector<double> importance = feature_importance(model);

  // Column -> segment mapping follows the layout's segment extents in order.
  std::vector<std::string> segment_of;
  for (const auto& seg : layout.at("segments")) {
    const std::size_t extent =
        seg.at("rows").get<std::size_t>() * seg.at("cols").get<std::size_t>();
    for (std::size_t i = 0; i < extent; ++i) {
      segment_of.push_back(seg.at("name").get<std::string>());
    }
  }
  if (segment_of.size() != importance.size()) {
    throw std::runtime_error("layout does not match feature width");
  }

  ordered_json config;
  config["trees"] = args.trees;
  config["seed"] = args.seed;
  std::string text = "# " + config.dump() + "\n";
  text += "column,segment,importance\n";
  for (std::size_t j = 0; j < importance.size(); ++j) {
    text += loaded.column_names[j] + "," + segment_of[j] + "," + format_double(importance[j]) + "\n";
  }
  write_text_file(args.out, text);
  std::cout << "wrote importance for " << importance.size() << " features to " << args.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence-diagram quantization, discrete transforms and classification"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic labeled dataset");
  generate->require_subcommand(1);
  CLI::App* orbit = generate->add_subcommand("orbit", "Orbits of the seeded 2-D recurrence");
  orbit->add_option("--out", gen.out, "Output dataset directory")->required();
  orbit->add_option("--rhos", gen.rhos, "Class parameter values")->delimiter(',');
  orbit->add_option("--per-class", gen.per_class, "Clouds per class");
  orbit->add_option("--points", gen.points, "Points per cloud");
  orbit->add_option("--seed", gen.seed, "Base seed");
  orbit->add_flag("--force", gen.force, "Overwrite a non-empty output directory");
  orbit->callback([&]() { cmd_generate_orbit(gen); });
  CLI::App* patterns = generate->add_subcommand("patterns", "Geometric pattern classes");
  patterns->add_option("--out", gen.out, "Output dataset directory")->required();
  patterns->add_option("--classes", gen.pattern_classes, "circles, clusters, uniform")
      ->delimiter(',');
  patterns->add_option("--per-class", gen.per_class, "Clouds per class");
  patterns->add_option("--points", gen.points, "Points per cloud");
  patterns->add_option("--jitter", gen.jitter, "Circle jitter / blob standard deviation");
  patterns->add_option("--background", gen.background, "Uniform background fraction");
  patterns->add_option("--seed", gen.seed, "Base seed");
  patterns->add_flag("--force", gen.force, "Overwrite a non-empty output directory");
  patterns->callback([&]() { cmd_generate_patterns(gen); });

  ComputePdArgs pd;
  CLI::App* compute = app.add_subcommand("compute-pd", "Compute persistence diagrams");
  compute->add_option("--in", pd.in, "Dataset directory (clouds/ or graphs/)")->required();
  compute->add_option("--out", pd.out, "Output diagram directory")->required();
  compute->add_option("--max-scale", pd.max_scale, "Rips truncation scale (clouds)");
  compute->add_option("--times", pd.times, "Heat diffusion times (graphs)")->delimiter(',');
  compute->add_option("--essential", pd.essential, "Graph essential classes: clamp or drop")
      ->check(CLI::IsMember({"clamp", "drop"}));
  compute->add_option("--jobs", pd.jobs, "Parallel workers");
  compute->add_flag("--force", pd.force, "Overwrite a non-empty output directory");
  compute->callback([&]() { cmd_compute_pd(pd); });

  VectorizeArgs vec;
  CLI::App* vectorize = app.add_subcommand("vectorize", "Quantize and transform diagrams");
  vectorize->add_option("--in", vec.in, "Diagram directory from compute-pd")->required();
  vectorize->add_option("--out", vec.out, "Output directory")->required();
  vectorize->add_option("--transform", vec.transform, "id, fft, db1..db3, coif1..coif3");
  vectorize->add_option("--grid", vec.grid, "Grid size ROWSxCOLS");
  vectorize->add_option("--scaling", vec.scaling, "Grid scaling: log or uniform")
      ->check(CLI::IsMember({"log", "uniform"}));
  vectorize->add_option("--alpha", vec.alpha, "Log-rescale parameters a1,a2");
  vectorize->add_option("--essential", vec.essential, "Infinite-death points: drop or clamp")
      ->check(CLI::IsMember({"clamp", "drop"}));
  vectorize->add_option("--split", vec.split, "Train fraction used to fit grids");
  vectorize->add_option("--seed", vec.seed, "Split seed");
  vectorize->add_option("--jobs", vec.jobs, "Parallel workers");
  vectorize->add_flag("--force", vec.force, "Overwrite a non-empty output directory");
  vectorize->callback([&]() { cmd_vectorize(vec); });

  ClassifyArgs cls;
  CLI::App* classify = app.add_subcommand("classify", "Split, train and score per transform");
  classify->add_option("--in", cls.in, "Diagram directory from compute-pd")->required();
  classify->add_option("--out", cls.out, "Output metrics JSON path")->required();
  classify->add_option("--transforms", cls.transforms, "Transforms to evaluate")->delimiter(',');
  classify->add_option("--grid", cls.grid, "Grid size ROWSxCOLS");
  classify->add_option("--ablate-grids", cls.ablate_grids, "Square grid sizes to sweep")
      ->delimiter(',');
  classify->add_option("--scaling", cls.scaling, "Grid scaling: log or uniform")
      ->check(CLI::IsMember({"log", "uniform"}));
  classify->add_option("--alpha", cls.alpha, "Log-rescale parameters a1,a2");
  classify->add_option("--alpha-candidates", cls.alpha_candidates,
                       "Candidate a1,a2 pairs for cross-validated search (repeatable)");
  classify->add_flag("--alpha-search", cls.alpha_search,
                     "Search the default candidate set {1,10,100,500,1000}^2");
  classify->add_option("--cv-k", cls.cv_k, "Cross-validation folds for the alpha search");
  classify->add_option("--split", cls.split, "Train fraction");
  classify->add_option("--repeats", cls.repeats, "Number of repeated splits");
  classify->add_option("--trees", cls.trees, "Forest size");
  classify->add_option("--essential", cls.essential, "Infinite-death points: drop or clamp")
      ->check(CLI::IsMember({"clamp", "drop"}));
  classify->add_option("--seed", cls.seed, "Base seed");
  classify->add_option("--jobs", cls.jobs, "Parallel workers");
  classify->callback([&]() { cmd_classify(cls); });

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time quantization and transforms");
  bench_cmd->add_option("--out", bench.out, "Output timing JSON path")->required();
  bench_cmd->add_option("--sizes", bench.sizes, "Diagram sizes to time")->delimiter(',');
  bench_cmd->add_option("--grid", bench.grid, "Grid size ROWSxCOLS");
  bench_cmd->add_option("--runs", bench.runs, "Runs per measurement (median reported)");
  bench_cmd->add_option("--transforms", bench.transforms, "Transforms to time")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Synthetic data seed");
  bench_cmd->callback([&]() { cmd_bench(bench); });

  ImportanceArgs imp;
  CLI::App* importance = app.add_subcommand("importance", "Per-coefficient forest importance");
  importance->add_option("--in", imp.in, "Directory produced by vectorize")->required();
  importance->add_option("--out", imp.out, "Output importance CSV path")->required();
  importance->add_option("--trees", imp.trees, "Forest size");
  importance->add_option("--seed", imp.seed, "Forest seed");
  importance->callback([&]() { cmd_importance(imp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
