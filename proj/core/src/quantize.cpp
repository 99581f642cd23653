#include "qupid/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qupid {

double log_rescale(const BPPoint& pt, std::pair<double, double> alpha) {
  return std::log1p(pt.b * alpha.first + pt.p * alpha.second);
}

namespace {

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
};

std::pair<AxisRange, AxisRange> ranges_or_throw(std::span<const BPPoint> points) {
  if (points.empty()) throw std::invalid_argument("no points to fit grid");
  AxisRange b{points[0].b, points[0].b};
  AxisRange p{points[0].p, points[0].p};
  for (const BPPoint& pt : points) {
    b.lo = std::min(b.lo, pt.b);
    b.hi = std::max(b.hi, pt.b);
    p.lo = std::min(p.lo, pt.p);
    p.hi = std::max(p.hi, pt.p);
  }
  return {b, p};
}

std::vector<double> equispaced_edges(AxisRange range, std::size_t count) {
  double span = range.hi - range.lo;
  if (span == 0.0 && count > 1) span = 1.0;  // degenerate axis, see header
  std::vector<double> edges(count);
  for (std::size_t i = 0; i < count; ++i) {
    edges[i] = range.lo + static_cast<double>(i) * span / static_cast<double>(count);
  }
  return edges;
}

}  // namespace

GridSpec build_uniform_grid(std::span<const BPPoint> training_points, std::size_t r,
                            std::size_t s) {
  if (r < 1 || s < 1) throw std::invalid_argument("grid needs r >= 1 and s >= 1");
  const auto [b_range, p_range] = ranges_or_throw(training_points);
  GridSpec grid;
  grid.b_edges = equispaced_edges(b_range, r);
  grid.p_edges = equispaced_edges(p_range, s);
  grid.scaling = GridScaling::Uniform;
  grid.validate();
  return grid;
}

GridSpec build_log_grid(std::span<const BPPoint> training_points, std::size_t r,
                        std::size_t s, std::pair<double, double> alpha) {
  if (r < 1 || s < 1) throw std::invalid_argument("grid needs r >= 1 and s >= 1");
  if (alpha.first <= 0.0 || alpha.second <= 0.0) {
    throw std::invalid_argument("log grid needs positive alpha");
  }
  const auto [b_range, p_range] = ranges_or_throw(training_points);

  auto rescaled_axis = [](AxisRange range, double a, std::size_t count) {
    const AxisRange u{std::log1p(a * range.lo), std::log1p(a * range.hi)};
    std::vector<double> edges = equispaced_edges(u, count);
    for (double& e : edges) e = std::expm1(e) / a;
    // expm1/log1p round-trip can drift below the true minimum; binning uses
    // half-open boxes so pin the first edge exactly.
    edges[0] = range.lo;
    return edges;
  };

  GridSpec grid;
  grid.b_edges = rescaled_axis(b_range, alpha.first, r);
  grid.p_edges = rescaled_axis(p_range, alpha.second, s);
  grid.scaling = GridScaling::LogScaled;
  grid.alpha = alpha;
  grid.validate();
  return grid;
}

namespace {

// Index of the half-open box [edge_i, edge_{i+1}) containing x, the last box
// extending to +inf. Returns npos for x below the first edge.
std::size_t bin_index(const std::vector<double>& edges, double x) {
  if (x < edges.front()) return std::numeric_limits<std::size_t>::max();
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace

QuantizedMeasure quantize_points(std::span<const BPPoint> points, const GridSpec& grid,
                                 QuantizeStats* stats) {
  grid.validate();
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  QuantizedMeasure measure;
  measure.grid = grid;
  measure.masses = Matrix(grid.bins_b(), grid.bins_p());
  for (const BPPoint& pt : points) {
    const std::size_t i = bin_index(grid.b_edges, pt.b);
    const std::size_t j = bin_index(grid.p_edges, pt.p);
    if (i == npos || j == npos) {
      if (stats) ++stats->below_grid;
      continue;
    }
    measure.masses.at(i, j) += 1.0;
    if (stats) ++stats->binned;
  }
  return measure;
}

QuantizedMeasure quantize(const PersistenceDiagram& diagram, const GridSpec& grid,
                          const InfinitePolicy& policy, QuantizeStats* stats) {
  if (stats && policy.kind == InfinitePolicy::Kind::Drop) {
    for (const DiagramPoint& pt : diagram.points) {
      if (pt.has_infinite_death()) ++stats->dropped_infinite;
    }
  }
  const auto points = to_birth_persistence(diagram, policy);
  return quantize_points(points, grid, stats);
}

}  // namespace qupid
