#pragma once

// Independent reference implementations the tests compare the library
// against. Each one follows the most literal formula available and shares no
// code with the production path it checks.

#include <vector>

#include "qupid/fft.hpp"
#include "qupid/grid.hpp"
#include "qupid/homology.hpp"

namespace oracle {

// Direct O((r*s)^2) evaluation of the 2-D DFT sum
// F[l1][l2] = sum_{i,j} m[i][j] exp(-2*pi*I*(l1*i/r + l2*j/s)).
qupid::ComplexMatrix naive_dft2d(const qupid::Matrix& m);

// Direct separable correlation with downsampling by two and zero extension:
// y[l1][l2] = sum_{m1,m2} x[2*l1+m1][2*l2+m2] * f_rows[m1] * f_cols[m2],
// one double loop per output entry. Output is ceil(rows/2) x ceil(cols/2).
qupid::Matrix naive_filter_downsample(const qupid::Matrix& x,
                                      const std::vector<double>& f_rows,
                                      const std::vector<double>& f_cols);

// H0 barcode of the Euclidean Rips filtration via Prim's O(n^2) minimum
// spanning tree: one (0, w) point per positive MST edge weight w, plus the
// one essential class.
qupid::PersistenceDiagram prim_h0(const qupid::PointCloud& cloud);

// H1 pairs from a full boundary-matrix reduction over Z/2 of the truncated
// complex: vertices, edges and triangles in one global filtration order,
// every column reduced. Quadratic and tiny-input only.
qupid::PersistenceDiagram full_reduction_h1(const qupid::PointCloud& cloud, double max_scale);

}  // namespace oracle
