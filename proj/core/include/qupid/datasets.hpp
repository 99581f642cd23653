#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qupid/homology.hpp"
#include "qupid/rng.hpp"

namespace qupid {

struct OrbitParams {
  double rho = 0.0;
  std::size_t n_points = 0;
  std::uint64_t seed = 0;
};

/// x_n = x_{n-1} + rho * y_{n-1} * (1 - y_{n-1}) mod 1, then
/// y_n = y_{n-1} + rho * x_n * (1 - x_n) mod 1 — note y_n reads the already
/// updated x_n. The cloud contains the start point plus n_points - 1 iterates.
PointCloud generate_orbit(const OrbitParams& params);

/// Same recurrence from an explicit start instead of a seeded random one.
PointCloud generate_orbit_from(double x0, double y0, double rho, std::size_t n_points);

struct LabeledCloudSet {
  std::vector<PointCloud> clouds;
  std::vector<int> labels;
};

/// One class per rho value; cloud (c, i) is generated from the seed
/// mix(seed, c * per_class + i), so any subset can be regenerated
/// independently and in parallel.
LabeledCloudSet generate_orbit_dataset(const std::vector<double>& rhos, std::size_t per_class,
                                       std::size_t n_points, std::uint64_t seed);

enum class PatternClass {
  CirclesPlusNoise,  // two circles, Gaussian radial jitter, uniform background
  Clusters,          // three isotropic Gaussian blobs
  Uniform,           // uniform on the unit square
};

std::string pattern_class_name(PatternClass c);
PatternClass pattern_class_from_string(const std::string& name);

struct PatternParams {
  double jitter = 0.05;           // circle jitter / blob standard deviation
  double background_frac = 0.1;   // CirclesPlusNoise only
};

PointCloud generate_pattern(PatternClass cls, std::size_t n_points, const PatternParams& params,
                            std::uint64_t seed);

LabeledCloudSet generate_pattern_set(const std::vector<PatternClass>& classes,
                                     std::size_t per_class, std::size_t n_points,
                                     const PatternParams& params, std::uint64_t seed);

/// Directory layout: clouds/{label}/{index}.csv plus manifest.json. The
/// manifest records the generation parameters and per-label counts.
void save_cloud_set(const LabeledCloudSet& set, const std::filesystem::path& dir,
                    const nlohmann::ordered_json& manifest);

/// Reads the layout above; items ordered by (label, index).
LabeledCloudSet load_cloud_set(const std::filesystem::path& dir,
                               nlohmann::ordered_json* manifest_out = nullptr);

/// Graph dataset layout: graphs/{label}/{index}.txt plus manifest.json.
struct LabeledGraphSet {
  std::vector<WeightedGraph> graphs;
  std::vector<int> labels;
};

void save_graph_set(const LabeledGraphSet& set, const std::filesystem::path& dir,
                    const nlohmann::ordered_json& manifest);
LabeledGraphSet load_graph_set(const std::filesystem::path& dir,
                               nlohmann::ordered_json* manifest_out = nullptr);

}  // namespace qupid
