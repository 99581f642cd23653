#pragma once

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "qupid/diagram.hpp"
#include "qupid/grid.hpp"

namespace qupid {

/// Finite point cloud in R^dim, coordinates stored flat row-major.
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  const double* point(std::size_t i) const { return coords.data() + i * dim; }
  void push_back(std::initializer_list<double> pt);
};

double euclidean_distance(const PointCloud& cloud, std::size_t i, std::size_t j);

/// Point cloud file format: one row per point, comma-separated coordinates,
/// no header.
void save_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud load_cloud_csv(const std::filesystem::path& path);

/// Degree-0 Vietoris-Rips persistence. Every component is born at 0 and dies
/// when Kruskal's scan merges it; an edge enters the filtration at its
/// Euclidean length. Ties resolved by lexicographic vertex pair. Exactly one
/// essential class (0, +inf) remains; zero-length merges (coincident points)
/// are dropped as zero-persistence pairs.
PersistenceDiagram rips_h0(const PointCloud& cloud);

/// Degree-1 Vietoris-Rips persistence up to max_scale, by reduction of the
/// triangle boundary matrix over Z/2. Simplices are ordered by (filtration
/// value, dimension, lexicographic vertex tuple); a triangle's value is its
/// longest edge. Cycles still open at max_scale are dropped. Throws when the
/// truncated complex would exceed the triangle budget, suggesting a smaller
/// max_scale.
constexpr std::size_t kDefaultTriangleBudget = 10'000'000;
PersistenceDiagram rips_h1(const PointCloud& cloud, double max_scale,
                           std::size_t triangle_budget = kDefaultTriangleBudget);

/// Undirected unweighted graph; vertex functions supply filtration values.
struct WeightedGraph {
  std::size_t n_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws on out-of-range endpoints, self-loops or duplicate edges.
  void validate() const;
};

using VertexFunction = std::vector<double>;

/// Graph file format: first line `n_vertices`, then one `u v` line per edge,
/// 0-indexed.
void save_graph(const WeightedGraph& graph, const std::filesystem::path& path);
WeightedGraph load_graph(const std::filesystem::path& path);

/// L = I - D^{-1/2} A D^{-1/2}. An isolated vertex gets L_vv = 0, so it
/// contributes the eigenpair (0, indicator) and retains full heat.
Matrix normalized_laplacian(const WeightedGraph& graph);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

/// Full symmetric eigendecomposition by cyclic Jacobi rotations, swept until
/// the off-diagonal Frobenius norm drops below 1e-12.
EigenDecomposition jacobi_eigen(const Matrix& symmetric);

/// Heat kernel signature HKS_t(v) = sum_k exp(-t lambda_k) psi_k(v)^2 over
/// the full spectrum of the normalized Laplacian.
VertexFunction hks(const WeightedGraph& graph, double t);

/// Per-edge value max(f(u), f(v)), in the graph's edge order.
std::vector<double> extend_to_edges(const WeightedGraph& graph, const VertexFunction& f);

/// What to do with classes that never die inside the filtration.
enum class EssentialPolicy {
  Keep,             // emit (entry value, +inf)
  Drop,             // omit entirely
  ClampToExtremum,  // close at the global extremum of f
};

struct GraphDiagrams {
  PersistenceDiagram h0;
  PersistenceDiagram h1;
};

/// Lower-star filtration: vertex v enters at f(v), edge at the max of its
/// endpoints. H0 merges follow the elder rule (smaller birth survives, ties
/// to the smaller vertex index); each cycle-closing edge creates an H1 class
/// at its entry value. Zero-persistence pairs from the pairing are dropped;
/// essential classes are handled per policy (clamped to max f).
GraphDiagrams graph_sublevel_persistence(const WeightedGraph& graph, const VertexFunction& f,
                                         EssentialPolicy policy = EssentialPolicy::Keep);

/// Sublevel persistence of -f with coordinates mapped back: finite pairs
/// become (min, max) of their two f-values; clamped essentials close at the
/// global minimum of f.
GraphDiagrams graph_superlevel_persistence(const WeightedGraph& graph, const VertexFunction& f,
                                           EssentialPolicy policy = EssentialPolicy::Keep);

}  // namespace qupid
