#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace qupid {

/// Dense row-major matrix of doubles. Small utility type shared by the
/// quantization and transform code; not a linear-algebra library.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::size_t size() const { return data.size(); }
};

bool operator==(const Matrix& a, const Matrix& b);

enum class GridScaling { Uniform, LogScaled };

std::string to_string(GridScaling scaling);
GridScaling grid_scaling_from_string(const std::string& name);

/// Quantization grid: bin edges on the birth and persistence axes.
/// Bin (i, j), 0-based, is the half-open box
/// [b_edges[i], b_edges[i+1]) x [p_edges[j], p_edges[j+1]), with the edge
/// past the last extending to +inf. Edges are strictly increasing.
/// LogScaled grids additionally record the per-axis rescale parameter alpha;
/// their concrete edges are already mapped back to birth-persistence
/// coordinates, so binning never needs alpha again.
struct GridSpec {
  std::vector<double> b_edges;
  std::vector<double> p_edges;
  GridScaling scaling = GridScaling::Uniform;
  std::pair<double, double> alpha{1.0, 1.0};

  std::size_t bins_b() const { return b_edges.size(); }
  std::size_t bins_p() const { return p_edges.size(); }

  /// Throws if edges are empty, not strictly increasing, or alpha is not
  /// positive on a log-scaled grid.
  void validate() const;
};

bool operator==(const GridSpec& a, const GridSpec& b);

void save_grid_json(const GridSpec& grid, const std::filesystem::path& path);
GridSpec load_grid_json(const std::filesystem::path& path);
std::string grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const std::string& text);

/// Result of binning a diagram: an r x s matrix of non-negative bin masses
/// over the grid that produced it.
struct QuantizedMeasure {
  Matrix masses;
  GridSpec grid;

  double total_mass() const;
};

}  // namespace qupid
