#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qupid/diagram.hpp"
#include "qupid/grid.hpp"

namespace qupid {

/// log(1 + b*alpha1 + p*alpha2), the scalar score whose level sets motivate
/// the skewed bins of log-scaled grids. Requires alpha > 0 and b, p >= 0,
/// so the argument of the log is >= 1.
double log_rescale(const BPPoint& pt, std::pair<double, double> alpha);

/// Grid with `r` equispaced birth edges from min b to max b and `s`
/// equispaced persistence edges, the i-th edge at min + i*(max-min)/r.
/// The maximum always falls in the last bin because the edge past the last
/// extends to +inf. A degenerate axis (min == max) with more than one bin
/// gets a unit span so edges stay strictly increasing; every point then
/// lands in the first bin.
///
/// Throws on an empty training set.
GridSpec build_uniform_grid(std::span<const BPPoint> training_points, std::size_t r,
                            std::size_t s);

/// Like build_uniform_grid, but each axis is rescaled independently,
/// b -> log(1 + alpha1*b) and p -> log(1 + alpha2*p), edges equispaced in
/// rescaled coordinates and mapped back through the inverse. Binning against
/// the concrete edges is then exactly binning on a regular grid in rescaled
/// coordinates.
GridSpec build_log_grid(std::span<const BPPoint> training_points, std::size_t r,
                        std::size_t s, std::pair<double, double> alpha);

struct QuantizeStats {
  std::size_t binned = 0;
  std::size_t below_grid = 0;  // points left of b_edges[0] or under p_edges[0], discarded
  std::size_t dropped_infinite = 0;
};

/// Bins the diagram's birth-persistence points into the grid's half-open
/// boxes. Bin lookup is a binary search over each axis' edges. Points below
/// the first edge on either axis are discarded and counted in `stats`.
QuantizedMeasure quantize(const PersistenceDiagram& diagram, const GridSpec& grid,
                          const InfinitePolicy& policy, QuantizeStats* stats = nullptr);

QuantizedMeasure quantize_points(std::span<const BPPoint> points, const GridSpec& grid,
                                 QuantizeStats* stats = nullptr);

}  // namespace qupid
