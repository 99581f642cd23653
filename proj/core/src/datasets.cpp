#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qupid/csv.hpp"
#include "qupid/datasets.hpp"

namespace qupid {

namespace {

double mod1(double x) {
  const double r = x - std::floor(x);
  return r < 1.0 ? r : 0.0;  // guard against floor rounding at the boundary
}

PointCloud run_orbit(double x, double y, double rho, std::size_t n_points) {
  PointCloud cloud;
  cloud.dim = 2;
  cloud.coords.reserve(2 * n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    cloud.coords.push_back(x);
    cloud.coords.push_back(y);
    x = mod1(x + rho * y * (1.0 - y));
    y = mod1(y + rho * x * (1.0 - x));
  }
  return cloud;
}

// Entries ordered by (label, index) to mirror dataset ordering.
template <typename Item, typename SaveFn>
void save_labeled_dir(const std::vector<Item>& items, const std::vector<int>& labels,
                      const std::filesystem::path& dir, const std::string& subdir,
                      const std::string& extension, const nlohmann::ordered_json& manifest,
                      SaveFn save_item) {
  if (items.size() != labels.size()) throw std::invalid_argument("items/labels size mismatch");
  std::map<int, std::size_t> next_index;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int label = labels[i];
    const std::size_t index = next_index[label]++;
    const std::filesystem::path path =
        dir / subdir / std::to_string(label) / (std::to_string(index) + extension);
    save_item(items[i], path);
  }
  nlohmann::ordered_json full = manifest;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [label, count] : next_index) counts[std::to_string(label)] = count;
  full["counts"] = counts;
  write_text_file(dir / "manifest.json", full.dump(2) + "\n");
}

template <typename Item, typename LoadFn>
void load_labeled_dir(const std::filesystem::path& dir, const std::string& subdir,
                      std::vector<Item>& items, std::vector<int>& labels, LoadFn load_item) {
  const std::filesystem::path root = dir / subdir;
  if (!std::filesystem::is_directory(root)) {
    throw std::runtime_error("missing dataset directory " + root.string());
  }
  std::vector<int> label_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) label_dirs.push_back(std::stoi(entry.path().filename().string()));
  }
  std::sort(label_dirs.begin(), label_dirs.end());
  for (const int label : label_dirs) {
    std::vector<std::pair<int, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(root / std::to_string(label))) {
      if (entry.is_regular_file()) {
        files.emplace_back(std::stoi(entry.path().filename().stem().string()), entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& [index, path] : files) {
      items.push_back(load_item(path));
      labels.push_back(label);
    }
  }
}

}  // namespace

PointCloud generate_orbit(const OrbitParams& params) {
  if (params.n_points < 1) throw std::invalid_argument("n_points must be >= 1");
  if (!(params.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  Rng rng(params.seed);
  const double x0 = rng.next_double();
  const double y0 = rng.next_double();
  return run_orbit(x0, y0, params.rho, params.n_points);
}

PointCloud generate_orbit_from(double x0, double y0, double rho, std::size_t n_points) {
  return run_orbit(x0, y0, rho, n_points);
}

LabeledCloudSet generate_orbit_dataset(const std::vector<double>& rhos, std::size_t per_class,
                                       std::size_t n_points, std::uint64_t seed) {
  LabeledCloudSet set;
  for (std::size_t c = 0; c < rhos.size(); ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      OrbitParams params;
      params.rho = rhos[c];
      params.n_points = n_points;
      params.seed = Rng::mix(seed, static_cast<std::uint64_t>(c * per_class + i));
      set.clouds.push_back(generate_orbit(params));
      set.labels.push_back(static_cast<int>(c));
    }
  }
  return set;
}

std::string pattern_class_name(PatternClass c) {
  switch (c) {
    case PatternClass::CirclesPlusNoise: return "circles";
    case PatternClass::Clusters: return "clusters";
    case PatternClass::Uniform: return "uniform";
  }
  throw std::logic_error("unreachable");
}

PatternClass pattern_class_from_string(const std::string& name) {
  if (name == "circles") return PatternClass::CirclesPlusNoise;
  if (name == "clusters") return PatternClass::Clusters;
  if (name == "uniform") return PatternClass::Uniform;
  throw std::invalid_argument("unknown pattern class: " + name);
}

PointCloud generate_pattern(PatternClass cls, std::size_t n_points, const PatternParams& params,
                            std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud;
  cloud.dim = 2;
  cloud.coords.reserve(2 * n_points);
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  switch (cls) {
    case PatternClass::CirclesPlusNoise: {
      // Two circles of different radii; each sample either lands on a circle
      // (with radial Gaussian jitter) or in the uniform background.
      const double cx[2] = {0.32, 0.68};
      const double cy[2] = {0.32, 0.68};
      const double radius[2] = {0.22, 0.14};
      for (std::size_t i = 0; i < n_points; ++i) {
        if (rng.next_double() < params.background_frac) {
          const double x = rng.next_double();
          const double y = rng.next_double();
          cloud.coords.push_back(x);
          cloud.coords.push_back(y);
        } else {
          const std::size_t which = rng.next_double() < 0.5 ? 0 : 1;
          const double angle = kTwoPi * rng.next_double();
          const double r = radius[which] + params.jitter * rng.next_gaussian();
          cloud.coords.push_back(cx[which] + r * std::cos(angle));
          cloud.coords.push_back(cy[which] + r * std::sin(angle));
        }
      }
      break;
    }
    case PatternClass::Clusters: {
      const double cx[3] = {0.25, 0.75, 0.5};
      const double cy[3] = {0.25, 0.25, 0.75};
      for (std::size_t i = 0; i < n_points; ++i) {
        const std::size_t which = rng.next_below(3);
        cloud.coords.push_back(cx[which] + params.jitter * rng.next_gaussian());
        cloud.coords.push_back(cy[which] + params.jitter * rng.next_gaussian());
      }
      break;
    }
    case PatternClass::Uniform: {
      for (std::size_t i = 0; i < n_points; ++i) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        cloud.coords.push_back(x);
        cloud.coords.push_back(y);
      }
      break;
    }
  }
  return cloud;
}

LabeledCloudSet generate_pattern_set(const std::vector<PatternClass>& classes,
                                     std::size_t per_class, std::size_t n_points,
                                     const PatternParams& params, std::uint64_t seed) {
  LabeledCloudSet set;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::uint64_t item_seed = Rng::mix(seed, static_cast<std::uint64_t>(c * per_class + i));
      set.clouds.push_back(generate_pattern(classes[c], n_points, params, item_seed));
      set.labels.push_back(static_cast<int>(c));
    }
  }
  return set;
}

void save_cloud_set(const LabeledCloudSet& set, const std::filesystem::path& dir,
                    const nlohmann::ordered_json& manifest) {
  save_labeled_dir(set.clouds, set.labels, dir, "clouds", ".csv", manifest,
                   [](const PointCloud& cloud, const std::filesystem::path& path) {
                     save_cloud_csv(cloud, path);
                   });
}

LabeledCloudSet load_cloud_set(const std::filesystem::path& dir,
                               nlohmann::ordered_json* manifest_out) {
  if (manifest_out != nullptr) {
    *manifest_out = nlohmann::ordered_json::parse(read_text_file(dir / "manifest.json"));
  }
  LabeledCloudSet set;
  load_labeled_dir(dir, "clouds", set.clouds, set.labels, load_cloud_csv);
  return set;
}

void save_graph_set(const LabeledGraphSet& set, const std::filesystem::path& dir,
                    const nlohmann::ordered_json& manifest) {
  save_labeled_dir(set.graphs, set.labels, dir, "graphs", ".txt", manifest,
                   [](const WeightedGraph& graph, const std::filesystem::path& path) {
                     save_graph(graph, path);
                   });
}

LabeledGraphSet load_graph_set(const std::filesystem::path& dir,
                               nlohmann::ordered_json* manifest_out) {
  if (manifest_out != nullptr) {
    *manifest_out = nlohmann::ordered_json::parse(read_text_file(dir / "manifest.json"));
  }
  LabeledGraphSet set;
  load_labeled_dir(dir, "graphs", set.graphs, set.labels, load_graph);
  return set;
}

}  // namespace qupid
