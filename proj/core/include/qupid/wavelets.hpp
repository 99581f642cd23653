#pragma once

#include <vector>

#include "qupid/grid.hpp"

namespace qupid {

/// Orthonormal analysis filter pair. The lowpass h is a scaling filter
/// (sum h = sqrt(2), unit energy, orthonormal even shifts); the highpass is
/// tied to it by the quadrature-mirror relation g_k = (-1)^k h_{L-1-k}.
struct FilterPair {
  std::vector<double> lowpass;
  std::vector<double> highpass;

  std::size_t length() const { return lowpass.size(); }

  /// Throws unless the pair satisfies the scaling-filter identities to 1e-9
  /// and the quadrature-mirror relation exactly as stored.
  void validate() const;
};

enum class WaveletFamily { Daubechies, Coiflet };

/// Embedded standard coefficient tables, validated on every call.
/// Daubechies(1) is the Haar pair. Supported orders: 1..3 for both families.
FilterPair wavelet_filters(WaveletFamily family, int order);

struct Dwt2Result {
  Matrix approx;            // cA: lowpass on both axes
  Matrix detail_horizontal; // cH: highpass on the first (birth) axis
  Matrix detail_vertical;   // cV: highpass on the second (persistence) axis
  Matrix detail_diagonal;   // cD: highpass on both axes
};

/// Single-level separable 2-D filter bank with downsampling by two on each
/// axis. The input is extended by zeros outside its support, which is the
/// literal inner-product reading for a measure supported on the grid; an odd
/// axis behaves as if padded with one trailing zero row/column. Analysis is
/// the correlation y[l] = sum_m x[2l + m] f[m], so for the Haar pair the
/// outputs are exactly the inner products against the k=1 Haar family.
/// Each output matrix is ceil(r/2) x ceil(s/2).
Dwt2Result dwt2_single_level(const Matrix& input, const FilterPair& filters);
Dwt2Result dwt2_single_level(const QuantizedMeasure& measure, const FilterPair& filters);

/// Synthesis bank adjoint to dwt2_single_level. Recovers input samples whose
/// every analysis window was computed, i.e. the interior away from the
/// boundary by at least the filter length.
Matrix idwt2_single_level(const Dwt2Result& coeffs, const FilterPair& filters,
                          std::size_t rows, std::size_t cols);

}  // namespace qupid
